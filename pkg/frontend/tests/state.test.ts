import { describe, expect, it } from "vitest";

import {
    annihilatedArms,
    buildPayload,
    decodeState,
    encodeState,
    equalWeights,
    latestOnly,
    renormalize,
    setWeight,
    validateDraft,
    weightSumOk,
    type WorkbenchState,
} from "../src/state.js";
import type { ArmDraft, CriterionDraft } from "../src/types.js";

function sampleCriteria(): CriterionDraft[] {
    return [
        { name: "response", kind: "benefit", most_preferable: 0.8, least_preferable: 0.2, linear_weight: 0.25 },
        { name: "nausea", kind: "risk", most_preferable: 0.0, least_preferable: 0.5, linear_weight: 0.25 },
        { name: "insomnia", kind: "risk", most_preferable: 0.0, least_preferable: 0.5, linear_weight: 0.25 },
        { name: "anxiety", kind: "risk", most_preferable: 0.0, least_preferable: 0.5, linear_weight: 0.25 },
    ];
}

function sampleArms(): ArmDraft[] {
    const outcomes = () => [
        { events: 50, patients: 96 },
        { events: 40, patients: 100 },
        { events: 22, patients: 100 },
        { events: 10, patients: 100 },
    ];
    return [
        { name: "Venlafaxine", outcomes: outcomes() },
        { name: "Fluoxetine", outcomes: outcomes() },
        { name: "Placebo", outcomes: outcomes() },
    ];
}

function sampleState(): WorkbenchState {
    return {
        criteria: sampleCriteria(),
        arms: sampleArms(),
        weights: [0.25, 0.25, 0.25, 0.25],
        model: "linear",
        interactionMass: 0.2,
        psi: 0.8,
        samples: 20000,
        seed: 2026,
        scenario: "1",
        xCriterion: 0,
        yCriterion: 1,
        armA: 0,
        armB: 2,
    };
}

describe("renormalize", () => {
    it("scales any positive vector to sum 1", () => {
        const out = renormalize([2, 1, 1]);
        const total = out.reduce((a, b) => a + b, 0);
        expect(Math.abs(total - 1)).toBeLessThanOrEqual(1e-6);
        expect(out[0]).toBeCloseTo(0.5, 12);
    });

    it("falls back to equal weights when the sum is degenerate", () => {
        expect(renormalize([0, 0, 0])).toEqual([1 / 3, 1 / 3, 1 / 3]);
    });
});

describe("setWeight", () => {
    it("keeps the edited value and renormalizes the rest", () => {
        const out = setWeight([0.25, 0.25, 0.25, 0.25], 0, 0.55);
        expect(out[0]).toBeCloseTo(0.55, 9);
        expect(weightSumOk(out)).toBe(true);
        // the untouched entries stay equal to each other
        expect(out[1]).toBeCloseTo(out[2], 12);
        expect(out[2]).toBeCloseTo(out[3], 12);
    });

    it("preserves the proportions of the untouched entries", () => {
        const out = setWeight([0.6, 0.3, 0.1], 2, 0.2);
        expect(out[0] / out[1]).toBeCloseTo(2, 9);
        expect(weightSumOk(out)).toBe(true);
    });

    it("clamps away from 0 and 1 so every weight stays positive", () => {
        const low = setWeight([0.25, 0.25, 0.25, 0.25], 1, -3);
        expect(low[1]).toBeGreaterThan(0);
        const high = setWeight([0.25, 0.25, 0.25, 0.25], 1, 2);
        expect(high[1]).toBeLessThan(1);
        expect(weightSumOk(low)).toBe(true);
        expect(weightSumOk(high)).toBe(true);
        for (const w of high) expect(w).toBeGreaterThan(0);
    });

    it("recovers when all other weights are zero", () => {
        const out = setWeight([0, 1, 0], 1, 0.4);
        expect(weightSumOk(out)).toBe(true);
        expect(out[0]).toBeCloseTo(0.3, 9);
    });
});

describe("equalWeights", () => {
    it("splits evenly and passes the sum check", () => {
        const out = equalWeights(4);
        expect(out).toEqual([0.25, 0.25, 0.25, 0.25]);
        expect(weightSumOk(out)).toBe(true);
    });
});

describe("annihilatedArms", () => {
    it("flags zero benefit events under the multiplicative models only", () => {
        const arms = sampleArms();
        arms[2].outcomes[0].events = 0;
        expect(annihilatedArms(sampleCriteria(), arms, "product")).toEqual(["Placebo"]);
        expect(annihilatedArms(sampleCriteria(), arms, "slos")).toEqual(["Placebo"]);
        expect(annihilatedArms(sampleCriteria(), arms, "linear")).toEqual([]);
        expect(annihilatedArms(sampleCriteria(), arms, "multilinear")).toEqual([]);
    });

    it("flags a risk criterion only when every patient had the event", () => {
        const arms = sampleArms();
        arms[0].outcomes[1].events = 100;
        expect(annihilatedArms(sampleCriteria(), arms, "product")).toEqual(["Venlafaxine"]);
        arms[0].outcomes[1].events = 99;
        expect(annihilatedArms(sampleCriteria(), arms, "product")).toEqual([]);
    });

    it("leaves the unmodified case study alone", () => {
        expect(annihilatedArms(sampleCriteria(), sampleArms(), "product")).toEqual([]);
    });
});

describe("validateDraft", () => {
    it("accepts the case-study draft", () => {
        expect(validateDraft(sampleCriteria(), sampleArms())).toEqual([]);
    });

    it("rejects events above patients with the service field path", () => {
        const arms = sampleArms();
        arms[1].outcomes[2].events = 150;
        const issues = validateDraft(sampleCriteria(), arms);
        expect(issues).toHaveLength(1);
        expect(issues[0].field).toBe("arms[1].outcomes[2].events");
        expect(issues[0].message).toMatch(/exceed/);
    });

    it("rejects negative and fractional counts", () => {
        const arms = sampleArms();
        arms[0].outcomes[0].events = -1;
        arms[0].outcomes[1].patients = 0.5;
        const fields = validateDraft(sampleCriteria(), arms).map((i) => i.field);
        expect(fields).toContain("arms[0].outcomes[0].events");
        expect(fields).toContain("arms[0].outcomes[1].patients");
    });

    it("rejects blank names and equal anchors", () => {
        const criteria = sampleCriteria();
        criteria[0].name = "  ";
        criteria[1].most_preferable = criteria[1].least_preferable;
        const arms = sampleArms();
        arms[2].name = "";
        const fields = validateDraft(criteria, arms).map((i) => i.field);
        expect(fields).toContain("criteria[0].name");
        expect(fields).toContain("criteria[1].most_preferable");
        expect(fields).toContain("arms[2].name");
    });
});

describe("buildPayload", () => {
    it("attaches the live weights to the criteria", () => {
        const state = sampleState();
        state.weights = [0.58, 0.11, 0.15, 0.16];
        const payload = buildPayload(state);
        expect(payload.criteria.map((c) => c.linear_weight)).toEqual([0.58, 0.11, 0.15, 0.16]);
        expect(payload.model).toBe("linear");
        expect(payload.samples).toBe(20000);
    });

    it("applies overrides without mutating the state", () => {
        const state = sampleState();
        const payload = buildPayload(state, { samples: 100000, include_samples: true });
        expect(payload.samples).toBe(100000);
        expect(payload.include_samples).toBe(true);
        expect(state.samples).toBe(20000);
        payload.arms[0].outcomes[0].events = 1;
        expect(state.arms[0].outcomes[0].events).toBe(50);
    });
});

describe("share URL codec", () => {
    it("round-trips the full state", () => {
        const state = sampleState();
        state.arms[0].name = "Venlafaxine étude"; // non-ascii survives
        state.weights = [0.58, 0.11, 0.15, 0.16];
        state.model = "slos";
        state.seed = 17;
        const restored = decodeState(`#${encodeState(state)}`);
        expect(restored).toEqual(state);
    });

    it("produces a fragment-safe string", () => {
        const encoded = encodeState(sampleState());
        expect(encoded).toMatch(/^[A-Za-z0-9_-]+$/);
    });

    it("returns null for garbage, empty, and wrong-shape fragments", () => {
        expect(decodeState("")).toBeNull();
        expect(decodeState("#")).toBeNull();
        expect(decodeState("#not base64!!")).toBeNull();
        const wrongShape = Buffer.from(JSON.stringify({ weights: [1] }), "utf8")
            .toString("base64url");
        expect(decodeState(`#${wrongShape}`)).toBeNull();
        const badModel = { ...sampleState(), model: "quadratic" };
        const badEncoded = Buffer.from(JSON.stringify(badModel), "utf8").toString("base64url");
        expect(decodeState(`#${badEncoded}`)).toBeNull();
    });
});

describe("latestOnly", () => {
    it("marks only the newest generation as current", () => {
        const guard = latestOnly();
        const first = guard.next();
        const second = guard.next();
        expect(guard.isCurrent(first)).toBe(false);
        expect(guard.isCurrent(second)).toBe(true);
        const third = guard.next();
        expect(guard.isCurrent(second)).toBe(false);
        expect(guard.isCurrent(third)).toBe(true);
    });
});
