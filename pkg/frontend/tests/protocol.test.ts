import { describe, expect, it } from "vitest";

import {
  evalResponseSchema,
  healthSchema,
  tilingSchema,
  typeDegeneracy,
} from "../src/protocol.js";
import { fixture } from "./fixtures.js";

describe("eval response schema", () => {
  it("accepts a recorded center evaluation with trace", () => {
    const parsed = evalResponseSchema.parse(fixture("eval_center"));
    expect(parsed.type).toBe(0);
    expect(parsed.vectors).toHaveLength(5);
    expect(parsed.trace?.foldReflections).toHaveLength(5);
  });

  it("accepts a recorded evaluation without trace", () => {
    const parsed = evalResponseSchema.parse(fixture("eval_edge"));
    expect(parsed.trace).toBeUndefined();
    expect(typeDegeneracy(parsed.type)).toBe(1);
  });

  it("rejects a wrong protocol version", () => {
    const payload = fixture("eval_generic") as Record<string, unknown>;
    expect(evalResponseSchema.safeParse({ ...payload, protocolVersion: 2 }).success).toBe(false);
  });

  it("rejects short vector lists", () => {
    const payload = fixture("eval_generic") as { vectors: unknown[] };
    const broken = { ...payload, vectors: payload.vectors.slice(0, 4) };
    expect(evalResponseSchema.safeParse(broken).success).toBe(false);
  });

  it("rejects non-finite coordinates", () => {
    const payload = fixture("eval_generic") as { vertices: number[][] };
    const vertices = payload.vertices.map((v) => [...v]);
    vertices[2][0] = Number.POSITIVE_INFINITY;
    expect(evalResponseSchema.safeParse({ ...payload, vertices }).success).toBe(false);
  });

  it("rejects type indices past the table", () => {
    const payload = fixture("eval_generic") as Record<string, unknown>;
    expect(evalResponseSchema.safeParse({ ...payload, type: 114 }).success).toBe(false);
  });
});

describe("type degeneracy bands", () => {
  it("splits indices at 24 and 84", () => {
    expect(typeDegeneracy(0)).toBe(0);
    expect(typeDegeneracy(23)).toBe(0);
    expect(typeDegeneracy(24)).toBe(1);
    expect(typeDegeneracy(83)).toBe(1);
    expect(typeDegeneracy(84)).toBe(2);
    expect(typeDegeneracy(113)).toBe(2);
  });
});

describe("tiling schema", () => {
  it("accepts a recorded patch", () => {
    const parsed = tilingSchema.parse(fixture("tiling_small"));
    expect(parsed.faces.length).toBe(parsed.faceCount);
    expect(parsed.edges.length).toBe(parsed.edgeCount);
    for (const edge of parsed.edges) {
      expect(edge.pair[0]).not.toBe(edge.pair[1]);
    }
    for (const face of parsed.faces) {
      expect([...face.labels].sort()).toEqual([0, 1, 2, 3, 4]);
    }
  });

  it("rejects an unknown edge line kind", () => {
    const payload = fixture("tiling_small") as { edges: { line: object }[] };
    const edges = payload.edges.map((e) => ({ ...e }));
    edges[0].line = { kind: "spiral", center: [0, 0], radius: 1 };
    expect(tilingSchema.safeParse({ ...payload, edges }).success).toBe(false);
  });
});

describe("health schema", () => {
  it("accepts a recorded health response", () => {
    const parsed = healthSchema.parse(fixture("health"));
    expect(parsed.modulus).toBeCloseTo(0.8928, 3);
    expect(parsed.cacheHash).toHaveLength(16);
  });

  it("rejects a bad status", () => {
    const payload = fixture("health") as Record<string, unknown>;
    expect(healthSchema.safeParse({ ...payload, status: "down" }).success).toBe(false);
  });
});
