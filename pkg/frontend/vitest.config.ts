import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "node",
    include: ["tests/**/*.test.ts"],
    // the e2e file boots the Python service, which may solve the field first
    testTimeout: 120_000,
    hookTimeout: 120_000,
  },
});
