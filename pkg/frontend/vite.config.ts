import { defineConfig } from "vitest/config";

// The dev server proxies API calls to the local scoring service, so the UI
// can be served from vite while `isec serve` runs on :8000.
export default defineConfig({
  server: {
    proxy: {
      "/api": {
        target: "http://127.0.0.1:8000",
        changeOrigin: true,
        rewrite: (path) => path.replace(/^\/api/, ""),
      },
    },
  },
  test: {
    environment: "node",
    include: ["tests/**/*.test.ts"],
  },
});
