import { afterEach, describe, expect, it, vi } from "vitest";

import { requestAssess, requestMappedWeights, ServiceError } from "../src/api.js";
import type { DatasetPayload } from "../src/types.js";

function jsonResponse(status: number, body: unknown): Response {
    return new Response(JSON.stringify(body), {
        status,
        headers: { "content-type": "application/json" },
    });
}

const payload = { samples: 100 } as DatasetPayload;

afterEach(() => {
    vi.unstubAllGlobals();
});

describe("service client", () => {
    it("posts JSON and returns the parsed body", async () => {
        const fetchMock = vi.fn(async (input: RequestInfo | URL, init?: RequestInit) => {
            expect(String(input)).toBe("/map-weights");
            expect(init?.method).toBe("POST");
            const body = JSON.parse(String(init?.body));
            expect(body.linear).toEqual([0.25, 0.75]);
            expect(body.interaction_mass).toBe(0.2);
            return jsonResponse(200, { linear: { weights: [0.25, 0.75], interaction_mass: 0 } });
        });
        vi.stubGlobal("fetch", fetchMock);
        const mapped = await requestMappedWeights([0.25, 0.75], 0.2);
        expect(mapped.linear.weights).toEqual([0.25, 0.75]);
        expect(fetchMock).toHaveBeenCalledOnce();
    });

    it("raises ServiceError with the detail envelope on 400", async () => {
        vi.stubGlobal("fetch", vi.fn(async () =>
            jsonResponse(400, {
                detail: {
                    error: "invalid request",
                    fields: [{ field: "samples", message: "samples must be at least 1" }],
                },
            }),
        ));
        const error = await requestAssess(payload).catch((e) => e);
        expect(error).toBeInstanceOf(ServiceError);
        expect(error.status).toBe(400);
        expect(error.detail.fields[0].field).toBe("samples");
    });

    it("keeps a generic detail when the error body is not JSON", async () => {
        vi.stubGlobal("fetch", vi.fn(async () => new Response("boom", { status: 502 })));
        const error = await requestAssess(payload).catch((e) => e);
        expect(error).toBeInstanceOf(ServiceError);
        expect(error.detail.error).toMatch(/502/);
    });
});
