// Thin fetch wrappers over the service endpoints. Errors carry the
// parsed detail envelope so the UI can point at the offending field.

import type {
    AssessResponse,
    CaseStudyPayload,
    ContourResponse,
    DatasetPayload,
    ErrorDetail,
    MappedWeights,
    ModelName,
} from "./types.js";

export class ServiceError extends Error {
    constructor(readonly status: number, readonly detail: ErrorDetail) {
        super(detail.message ?? detail.error);
        this.name = "ServiceError";
    }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await fetch(path, init);
    if (!resp.ok) {
        let detail: ErrorDetail = { error: `request failed (${resp.status})` };
        try {
            const body = await resp.json();
            if (body && typeof body === "object" && "detail" in body) {
                detail = body.detail as ErrorDetail;
            }
        } catch {
            // non-JSON error body, keep the generic detail
        }
        throw new ServiceError(resp.status, detail);
    }
    return resp.json() as Promise<T>;
}

function post<T>(path: string, body: unknown, signal?: AbortSignal): Promise<T> {
    return request<T>(path, {
        method: "POST",
        headers: { "content-type": "application/json" },
        body: JSON.stringify(body),
        signal,
    });
}

export function fetchCaseStudy(): Promise<CaseStudyPayload> {
    return request<CaseStudyPayload>("/case-study");
}

export function requestAssess(
    payload: DatasetPayload,
    signal?: AbortSignal,
): Promise<AssessResponse> {
    return post<AssessResponse>("/assess", payload, signal);
}

export function requestMappedWeights(
    linear: number[],
    interactionMass: number,
    signal?: AbortSignal,
): Promise<MappedWeights> {
    return post<MappedWeights>(
        "/map-weights",
        { linear, interaction_mass: interactionMass },
        signal,
    );
}

export function requestContours(
    model: ModelName,
    w: number,
    interactionMass: number,
    grid: number,
    signal?: AbortSignal,
): Promise<ContourResponse> {
    return post<ContourResponse>(
        "/contours",
        { model, w, interaction_mass: interactionMass, grid },
        signal,
    );
}
