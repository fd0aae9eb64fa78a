// JSON shapes exchanged with the service. Mirrors docs/api.md; the client
// does no score math of its own, so these are the only contracts it knows.

export type ModelName = "linear" | "product" | "multilinear" | "slos";

export const MODELS: ModelName[] = ["linear", "product", "multilinear", "slos"];

export interface OutcomeCount {
    events: number;
    patients: number;
}

export interface CriterionDraft {
    name: string;
    kind: "benefit" | "risk";
    most_preferable: number;
    least_preferable: number;
    linear_weight: number;
}

export interface ArmDraft {
    name: string;
    outcomes: OutcomeCount[];
}

export interface DatasetPayload {
    criteria: CriterionDraft[];
    arms: ArmDraft[];
    model: ModelName;
    interaction_mass: number;
    psi: number;
    samples: number;
    seed: number;
    include_samples?: boolean;
}

export interface CaseStudyPayload extends DatasetPayload {
    weight_scenarios: Record<string, number[]>;
}

export interface Comparison {
    arm_i: string;
    arm_h: string;
    probability: number;
    reverse_probability: number;
    ties: number;
    decision: string;
    recommended: string | null;
}

export interface PosteriorSummary {
    arm: string;
    criterion: string;
    quantity: "performance" | "partial_value";
    mean: number;
    lower: number;
    upper: number;
}

export interface AssessResponse {
    arms: string[];
    criteria: string[];
    model: ModelName;
    psi: number;
    samples: number;
    seed: number;
    interaction_mass: number;
    linear_weights: number[];
    weights_used: number[];
    comparisons: Comparison[];
    posterior_summaries: PosteriorSummary[];
    pvf_samples?: Record<string, number[][]>;
}

export interface MappedWeightRow {
    weights: number[];
    interaction_mass: number;
}

export type MappedWeights = Record<ModelName, MappedWeightRow>;

export interface ContourResponse {
    model: ModelName;
    w1: number;
    interaction_mass: number;
    axis: number[];
    loss: (number | null)[][];
}

export interface FieldError {
    field: string;
    message: string;
}

export interface ErrorDetail {
    error: string;
    fields?: FieldError[];
    message?: string;
}
