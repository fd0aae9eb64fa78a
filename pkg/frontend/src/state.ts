// Workbench state and the pure logic around it: weight renormalization,
// client-side draft validation, annihilation detection, and the shareable
// URL codec. Everything here is side-effect free so it can be unit tested.

import type {
    ArmDraft,
    CriterionDraft,
    DatasetPayload,
    FieldError,
    ModelName,
} from "./types.js";
import { MODELS } from "./types.js";

export interface WorkbenchState {
    criteria: CriterionDraft[];
    arms: ArmDraft[];
    weights: number[]; // linear weights, kept renormalized to sum 1
    model: ModelName;
    interactionMass: number;
    psi: number;
    samples: number;
    seed: number;
    scenario: string; // elicited scenario key, "" once weights are edited
    xCriterion: number; // contour slice axes
    yCriterion: number;
    armA: number; // posterior clouds overlaid on the contour map
    armB: number;
}

export const WEIGHT_SUM_TOLERANCE = 1e-6;
const MIN_WEIGHT = 0.01;
const MAX_WEIGHT = 0.97;

export function clampWeight(value: number): number {
    if (!Number.isFinite(value)) return MIN_WEIGHT;
    return Math.min(MAX_WEIGHT, Math.max(MIN_WEIGHT, value));
}

/** Scale all weights so they sum to exactly 1 (equal split if degenerate). */
export function renormalize(weights: number[]): number[] {
    const total = weights.reduce((acc, w) => acc + w, 0);
    if (!Number.isFinite(total) || total <= 0) {
        return weights.map(() => 1 / weights.length);
    }
    return weights.map((w) => w / total);
}

/**
 * Set one linear weight and rescale the others so the vector still sums
 * to 1. The edited entry keeps the requested value (after clamping away
 * from 0 and 1); the rest share the remainder in proportion.
 */
export function setWeight(weights: number[], index: number, value: number): number[] {
    const v = clampWeight(value);
    const next = weights.slice();
    next[index] = v;
    const othersTotal = weights.reduce((acc, w, i) => (i === index ? acc : acc + w), 0);
    const remainder = 1 - v;
    for (let i = 0; i < next.length; i++) {
        if (i === index) continue;
        next[i] = othersTotal > 0
            ? (weights[i] / othersTotal) * remainder
            : remainder / (next.length - 1);
    }
    return renormalize(next);
}

export function equalWeights(n: number): number[] {
    return new Array(n).fill(1 / n);
}

export function weightSumOk(weights: number[]): boolean {
    const total = weights.reduce((acc, w) => acc + w, 0);
    return Math.abs(total - 1) <= WEIGHT_SUM_TOLERANCE;
}

/**
 * Arms whose aggregate score is pinned at the worst value under the
 * multiplicative models. A Beta posterior puts all mass on 0 only when
 * events is 0 (benefit side) or on 1 only when events equals patients
 * (risk side); either way the clamped partial value is exactly 0 on
 * every draw, which annihilates product scores and blows up loss.
 */
export function annihilatedArms(
    criteria: CriterionDraft[],
    arms: ArmDraft[],
    model: ModelName,
): string[] {
    if (model !== "product" && model !== "slos") return [];
    const names: string[] = [];
    for (const arm of arms) {
        const dead = criteria.some((criterion, j) => {
            const outcome = arm.outcomes[j];
            if (!outcome) return false;
            return criterion.kind === "benefit"
                ? outcome.events === 0
                : outcome.events === outcome.patients && outcome.patients > 0;
        });
        if (dead) names.push(arm.name);
    }
    return names;
}

/**
 * Pre-submit checks mirroring the service validator, using the same
 * field paths so inline error display shares one code path with 4xx
 * responses.
 */
export function validateDraft(criteria: CriterionDraft[], arms: ArmDraft[]): FieldError[] {
    const issues: FieldError[] = [];
    criteria.forEach((criterion, j) => {
        if (!criterion.name.trim()) {
            issues.push({ field: `criteria[${j}].name`, message: "name must not be empty" });
        }
        if (criterion.most_preferable === criterion.least_preferable) {
            issues.push({
                field: `criteria[${j}].most_preferable`,
                message: "anchors must differ",
            });
        }
        if (!(criterion.linear_weight > 0)) {
            issues.push({
                field: `criteria[${j}].linear_weight`,
                message: "weight must be positive",
            });
        }
    });
    arms.forEach((arm, i) => {
        if (!arm.name.trim()) {
            issues.push({ field: `arms[${i}].name`, message: "name must not be empty" });
        }
        arm.outcomes.forEach((outcome, j) => {
            const base = `arms[${i}].outcomes[${j}]`;
            if (!Number.isInteger(outcome.patients) || outcome.patients < 1) {
                issues.push({ field: `${base}.patients`, message: "patients must be a positive integer" });
            }
            if (!Number.isInteger(outcome.events) || outcome.events < 0) {
                issues.push({ field: `${base}.events`, message: "events must be a non-negative integer" });
            } else if (outcome.events > outcome.patients) {
                issues.push({ field: `${base}.events`, message: "events must not exceed patients" });
            }
        });
    });
    return issues;
}

export function buildPayload(
    state: WorkbenchState,
    overrides: Partial<DatasetPayload> = {},
): DatasetPayload {
    const criteria = state.criteria.map((criterion, j) => ({
        ...criterion,
        linear_weight: state.weights[j],
    }));
    return {
        criteria,
        arms: state.arms.map((arm) => ({
            name: arm.name,
            outcomes: arm.outcomes.map((o) => ({ ...o })),
        })),
        model: state.model,
        interaction_mass: state.interactionMass,
        psi: state.psi,
        samples: state.samples,
        seed: state.seed,
        ...overrides,
    };
}

// The share URL carries the whole draft in the fragment as base64url
// JSON, so a pasted link replays the exact dataset, weights, model, and
// seed without any server-side session.

function toBase64Url(text: string): string {
    const bytes = new TextEncoder().encode(text);
    let binary = "";
    for (const b of bytes) binary += String.fromCharCode(b);
    return btoa(binary).replace(/\+/g, "-").replace(/\//g, "_").replace(/=+$/, "");
}

function fromBase64Url(encoded: string): string {
    const padded = encoded.replace(/-/g, "+").replace(/_/g, "/");
    const binary = atob(padded + "=".repeat((4 - (padded.length % 4)) % 4));
    const bytes = new Uint8Array(binary.length);
    for (let i = 0; i < binary.length; i++) bytes[i] = binary.charCodeAt(i);
    return new TextDecoder().decode(bytes);
}

export function encodeState(state: WorkbenchState): string {
    return toBase64Url(JSON.stringify(state));
}

export function decodeState(fragment: string): WorkbenchState | null {
    const raw = fragment.replace(/^#/, "");
    if (!raw) return null;
    let parsed: unknown;
    try {
        parsed = JSON.parse(fromBase64Url(raw));
    } catch {
        return null;
    }
    if (typeof parsed !== "object" || parsed === null) return null;
    const s = parsed as Record<string, unknown>;
    if (!Array.isArray(s.criteria) || !Array.isArray(s.arms) || !Array.isArray(s.weights)) {
        return null;
    }
    if (!MODELS.includes(s.model as ModelName)) return null;
    if (typeof s.psi !== "number" || typeof s.seed !== "number") return null;
    if (typeof s.samples !== "number" || typeof s.interactionMass !== "number") return null;
    return parsed as WorkbenchState;
}

/** Guard for keeping only the newest in-flight request's result. */
export function latestOnly(): { next(): number; isCurrent(generation: number): boolean } {
    let generation = 0;
    return {
        next() {
            return ++generation;
        },
        isCurrent(g: number) {
            return g === generation;
        },
    };
}
