/** Wire schemas for the evaluation service (protocolVersion 1). */

import { z } from "zod";

export const PROTOCOL_VERSION = 1;

const finite = z.number().finite();
const finitePair = z.tuple([finite, finite]);
const five = <T extends z.ZodType>(item: T) => z.array(item).length(5);

export const traceSchema = z.object({
  psi: five(finite),
  mobius: finitePair,
  foldReflections: five(z.number().int().nonnegative()),
});

export const evalResponseSchema = z.object({
  protocolVersion: z.literal(PROTOCOL_VERSION),
  source: finitePair,
  psi: five(finite),
  vectors: five(finitePair),
  vertices: five(finitePair),
  type: z.number().int().min(0).max(113),
  trace: traceSchema.optional(),
});
export type EvalResponse = z.infer<typeof evalResponseSchema>;

export interface EvalRequest {
  point: [number, number];
  wantTrace?: boolean;
}

/** Type indices are grouped by coincidence count: 0-23 none, 24-83 one
 *  coincident pair, 84-113 two. */
export function typeDegeneracy(typeIndex: number): 0 | 1 | 2 {
  if (typeIndex < 24) {
    return 0;
  }
  return typeIndex < 84 ? 1 : 2;
}

const word = z.array(z.string());

export const edgeLineSchema = z.discriminatedUnion("kind", [
  z.object({ kind: z.literal("arc"), center: finitePair, radius: z.number().positive() }),
  z.object({ kind: z.literal("diameter"), direction: finitePair }),
]);
export type EdgeLine = z.infer<typeof edgeLineSchema>;

export const tilingSchema = z.object({
  protocolVersion: z.literal(PROTOCOL_VERSION),
  radius: z.number().positive(),
  faceCount: z.number().int().nonnegative(),
  edgeCount: z.number().int().nonnegative(),
  vertexCount: z.number().int().nonnegative(),
  faces: z.array(
    z.object({
      word,
      center: finitePair,
      labels: five(z.number().int().min(0).max(4)),
    }),
  ),
  edges: z.array(
    z.object({
      word,
      midpoint: finitePair,
      endpoints: z.tuple([finitePair, finitePair]),
      pair: z.tuple([z.number().int().min(0).max(4), z.number().int().min(0).max(4)]),
      line: edgeLineSchema,
    }),
  ),
  vertices: z.array(z.object({ word, point: finitePair })),
});
export type TilingPayload = z.infer<typeof tilingSchema>;

export const healthSchema = z.object({
  status: z.literal("ok"),
  protocolVersion: z.literal(PROTOCOL_VERSION),
  version: z.string(),
  modulus: finite,
  meshSize: z.number().positive(),
  triangleCount: z.number().int().positive(),
  cacheHash: z.string(),
});
export type Health = z.infer<typeof healthSchema>;
