// Workbench wiring: builds the editor from the case-study dataset,
// debounces edits into a single in-flight assessment, and keeps the
// URL fragment in sync so a pasted link replays the exact state.

import {
    fetchCaseStudy,
    requestAssess,
    requestContours,
    requestMappedWeights,
    ServiceError,
} from "./api.js";
import { drawHeatmap, overlayCloud } from "./heatmap.js";
import {
    clearFieldErrors,
    clearGlobalError,
    renderBars,
    renderMappedTable,
    renderRunInfo,
    showFieldErrors,
    showGlobalError,
} from "./render.js";
import {
    annihilatedArms,
    buildPayload,
    decodeState,
    encodeState,
    equalWeights,
    latestOnly,
    setWeight,
    validateDraft,
    type WorkbenchState,
} from "./state.js";
import type { AssessResponse, CaseStudyPayload, ContourResponse } from "./types.js";
import { MODELS } from "./types.js";

const DEFAULT_SAMPLES = 20_000;
const PUBLISH_SAMPLES = 100_000;
const DEBOUNCE_MS = 300;
const CLOUD_COLORS = ["#ff6d3a", "#4db8ff"];

let state: WorkbenchState;
let scenarios: Record<string, number[]> = {};
let debounceTimer: number | undefined;
let inFlight: AbortController | undefined;
const generations = latestOnly();

function byId<T extends HTMLElement>(id: string): T {
    return document.getElementById(id) as T;
}

function initialState(caseStudy: CaseStudyPayload): WorkbenchState {
    scenarios = caseStudy.weight_scenarios ?? {};
    const weights = scenarios["1"] ?? caseStudy.criteria.map((c) => c.linear_weight);
    return {
        criteria: caseStudy.criteria.map((c) => ({ ...c })),
        arms: caseStudy.arms.map((a) => ({
            name: a.name,
            outcomes: a.outcomes.map((o) => ({ ...o })),
        })),
        weights: weights.slice(),
        model: "linear",
        interactionMass: caseStudy.interaction_mass,
        psi: caseStudy.psi,
        samples: DEFAULT_SAMPLES,
        seed: caseStudy.seed,
        scenario: scenarios["1"] ? "1" : "",
        xCriterion: 0,
        yCriterion: Math.min(1, caseStudy.criteria.length - 1),
        armA: 0,
        armB: Math.min(1, caseStudy.arms.length - 1),
    };
}

function syncUrl(): void {
    history.replaceState(null, "", `#${encodeState(state)}`);
}

// --- editor construction (built once, values updated in place) ---

function numberInput(
    value: number,
    field: string,
    apply: (v: number) => void,
    opts: { min?: number; max?: number; step?: number } = {},
): HTMLInputElement {
    const input = document.createElement("input");
    input.type = "number";
    input.value = String(value);
    input.dataset.field = field;
    if (opts.min !== undefined) input.min = String(opts.min);
    if (opts.max !== undefined) input.max = String(opts.max);
    if (opts.step !== undefined) input.step = String(opts.step);
    input.addEventListener("input", () => {
        apply(Number(input.value));
        scheduleAssess();
    });
    return input;
}

function buildDatasetEditor(): void {
    const table = byId<HTMLTableElement>("dataset-table");
    table.replaceChildren();
    const head = table.createTHead().insertRow();
    head.insertCell().textContent = "arm";
    state.criteria.forEach((criterion, j) => {
        const cell = head.insertCell();
        cell.textContent = `${criterion.name} (${criterion.kind})`;
        cell.title = `partial value anchors: best ${criterion.most_preferable}, worst ${criterion.least_preferable}`;
        cell.dataset.field = `criteria[${j}].name`;
    });
    const body = table.createTBody();
    state.arms.forEach((arm, i) => {
        const row = body.insertRow();
        const nameCell = row.insertCell();
        const nameInput = document.createElement("input");
        nameInput.type = "text";
        nameInput.value = arm.name;
        nameInput.dataset.field = `arms[${i}].name`;
        nameInput.addEventListener("input", () => {
            state.arms[i].name = nameInput.value;
            scheduleAssess();
        });
        nameCell.appendChild(nameInput);
        arm.outcomes.forEach((outcome, j) => {
            const cell = row.insertCell();
            cell.className = "count-cell";
            const events = numberInput(
                outcome.events,
                `arms[${i}].outcomes[${j}].events`,
                (v) => {
                    state.arms[i].outcomes[j].events = v;
                },
                { min: 0, max: outcome.patients, step: 1 },
            );
            const patients = numberInput(
                outcome.patients,
                `arms[${i}].outcomes[${j}].patients`,
                (v) => {
                    state.arms[i].outcomes[j].patients = v;
                    events.max = String(v); // events <= patients enforced at the input
                },
                { min: 1, step: 1 },
            );
            const slash = document.createElement("span");
            slash.textContent = "/";
            cell.append(events, slash, patients);
        });
    });
}

function buildWeightSliders(): void {
    const container = byId<HTMLElement>("weight-sliders");
    container.replaceChildren();
    state.criteria.forEach((criterion, j) => {
        const row = document.createElement("div");
        row.className = "slider-row";
        const label = document.createElement("label");
        label.textContent = criterion.name;
        const slider = document.createElement("input");
        slider.type = "range";
        slider.min = "0.01";
        slider.max = "0.97";
        slider.step = "0.001";
        slider.dataset.field = `criteria[${j}].linear_weight`;
        slider.id = `weight-${j}`;
        const readout = document.createElement("span");
        readout.className = "weight-readout";
        readout.id = `weight-readout-${j}`;
        slider.addEventListener("input", () => {
            state.weights = setWeight(state.weights, j, Number(slider.value));
            state.scenario = "";
            (byId<HTMLSelectElement>("scenario-select")).value = "";
            refreshWeightControls();
            scheduleAssess();
        });
        row.append(label, slider, readout);
        container.appendChild(row);
    });
    refreshWeightControls();
}

function refreshWeightControls(): void {
    state.weights.forEach((w, j) => {
        const slider = byId<HTMLInputElement>(`weight-${j}`);
        const readout = byId<HTMLElement>(`weight-readout-${j}`);
        if (slider) slider.value = w.toFixed(3);
        if (readout) readout.textContent = w.toFixed(3);
    });
}

function buildSelectors(): void {
    const scenarioSelect = byId<HTMLSelectElement>("scenario-select");
    scenarioSelect.replaceChildren();
    const custom = document.createElement("option");
    custom.value = "";
    custom.textContent = "custom";
    scenarioSelect.appendChild(custom);
    for (const key of Object.keys(scenarios).sort()) {
        const option = document.createElement("option");
        option.value = key;
        option.textContent = `scenario ${key}`;
        scenarioSelect.appendChild(option);
    }
    scenarioSelect.value = state.scenario;
    scenarioSelect.addEventListener("change", () => {
        const key = scenarioSelect.value;
        if (key && scenarios[key]) {
            state.weights = scenarios[key].slice();
            state.scenario = key;
            refreshWeightControls();
            scheduleAssess();
        }
    });

    const modelGroup = byId<HTMLElement>("model-group");
    modelGroup.replaceChildren();
    for (const model of MODELS) {
        const label = document.createElement("label");
        const radio = document.createElement("input");
        radio.type = "radio";
        radio.name = "model";
        radio.value = model;
        radio.checked = model === state.model;
        radio.addEventListener("change", () => {
            state.model = model;
            scheduleAssess();
        });
        label.append(radio, document.createTextNode(model));
        modelGroup.appendChild(label);
    }

    const criteriaNames = state.criteria.map((c) => c.name);
    const armNames = state.arms.map((a) => a.name);
    const pairSelects: [string, () => number, (v: number) => void, string[]][] = [
        ["x-criterion", () => state.xCriterion, (v) => { state.xCriterion = v; }, criteriaNames],
        ["y-criterion", () => state.yCriterion, (v) => { state.yCriterion = v; }, criteriaNames],
        ["cloud-arm-a", () => state.armA, (v) => { state.armA = v; }, armNames],
        ["cloud-arm-b", () => state.armB, (v) => { state.armB = v; }, armNames],
    ];
    for (const [id, current, update, names] of pairSelects) {
        const select = byId<HTMLSelectElement>(id);
        select.replaceChildren();
        names.forEach((name, index) => {
            const option = document.createElement("option");
            option.value = String(index);
            option.textContent = name;
            select.appendChild(option);
        });
        select.value = String(current());
        select.addEventListener("change", () => {
            update(Number(select.value));
            scheduleAssess();
        });
    }
}

function wireControls(): void {
    const psi = byId<HTMLInputElement>("psi-input");
    psi.value = String(state.psi);
    psi.addEventListener("input", () => {
        state.psi = Number(psi.value);
        scheduleAssess();
    });

    const seed = byId<HTMLInputElement>("seed-input");
    seed.value = String(state.seed);
    seed.addEventListener("input", () => {
        state.seed = Number(seed.value);
        scheduleAssess();
    });

    const mass = byId<HTMLInputElement>("c-input");
    mass.value = String(state.interactionMass);
    mass.addEventListener("input", () => {
        state.interactionMass = Number(mass.value);
        scheduleAssess();
    });

    byId<HTMLButtonElement>("reset-weights").addEventListener("click", () => {
        state.weights = equalWeights(state.criteria.length);
        state.scenario = "";
        (byId<HTMLSelectElement>("scenario-select")).value = "";
        refreshWeightControls();
        scheduleAssess();
    });

    byId<HTMLButtonElement>("publish-button").addEventListener("click", () => {
        runAssess(PUBLISH_SAMPLES);
    });
}

// --- assessment loop: one debounce, one in-flight request, latest wins ---

function scheduleAssess(): void {
    syncUrl();
    if (debounceTimer !== undefined) clearTimeout(debounceTimer);
    debounceTimer = window.setTimeout(() => runAssess(), DEBOUNCE_MS);
}

async function runAssess(samplesOverride?: number): Promise<void> {
    const errorStrip = byId<HTMLElement>("error-strip");
    clearFieldErrors(document);
    clearGlobalError(errorStrip);

    const issues = validateDraft(state.criteria, state.arms);
    if (issues.length > 0) {
        showFieldErrors(document, issues, errorStrip);
        return;
    }

    inFlight?.abort();
    inFlight = new AbortController();
    const signal = inFlight.signal;
    const generation = generations.next();
    byId<HTMLElement>("run-info").classList.add("pending");

    const samples = samplesOverride ?? state.samples;
    const payload = buildPayload(state, { samples, include_samples: true });
    // the contour slice holds the two picked criteria and renormalizes
    // their weights pairwise; the service computes the surface
    const wx = state.weights[state.xCriterion];
    const wy = state.weights[state.yCriterion];
    const sliceWeight = wx / (wx + wy);

    // allSettled so a 4xx on one endpoint (say an infeasible contour
    // slice) still lets the others render
    const [assessResult, mappedResult, contourResult] = await Promise.allSettled([
        requestAssess(payload, signal),
        requestMappedWeights(state.weights, state.interactionMass, signal),
        requestContours(state.model, sliceWeight, state.interactionMass, 81, signal),
    ]);
    if (!generations.isCurrent(generation)) return;
    byId<HTMLElement>("run-info").classList.remove("pending");

    if (assessResult.status === "fulfilled") {
        const report = assessResult.value;
        renderBars(
            byId<HTMLElement>("bars"),
            report,
            annihilatedArms(state.criteria, state.arms, state.model),
        );
        renderRunInfo(byId<HTMLElement>("run-info"), report);
        if (samplesOverride !== undefined) {
            byId<HTMLElement>("run-info").textContent += " (publish quality)";
        }
        if (contourResult.status === "fulfilled") {
            drawContours(report, contourResult.value);
        }
    }
    if (mappedResult.status === "fulfilled") {
        renderMappedTable(
            byId<HTMLTableElement>("mapped-table"),
            mappedResult.value,
            state.criteria.map((c) => c.name),
            state.model,
        );
    }
    for (const settled of [assessResult, mappedResult, contourResult]) {
        if (settled.status === "rejected") surfaceError(settled.reason, errorStrip);
    }
}

function surfaceError(error: unknown, errorStrip: HTMLElement): void {
    if (error instanceof DOMException && error.name === "AbortError") return;
    if (error instanceof ServiceError) {
        if (error.detail.fields && error.detail.fields.length > 0) {
            showFieldErrors(document, error.detail.fields, errorStrip);
        } else {
            showGlobalError(errorStrip, error.detail.message ?? error.detail.error);
        }
    } else {
        showGlobalError(errorStrip, `service unreachable: ${String(error)}`);
    }
}

function drawContours(report: AssessResponse, contours: ContourResponse): void {
    const canvas = byId<HTMLCanvasElement>("contour-canvas");
    drawHeatmap(canvas, contours);
    const samples = report.pvf_samples ?? {};
    const legend = byId<HTMLElement>("cloud-legend");
    legend.replaceChildren();
    [state.armA, state.armB].forEach((armIndex, k) => {
        const arm = state.arms[armIndex];
        if (!arm) return;
        const rows = samples[arm.name] ?? [];
        const points = rows.map(
            (row) => [row[state.xCriterion], row[state.yCriterion]] as [number, number],
        );
        overlayCloud(canvas, points, CLOUD_COLORS[k]);
        const entry = document.createElement("span");
        entry.className = "legend-entry";
        entry.style.color = CLOUD_COLORS[k];
        entry.textContent = arm.name;
        legend.appendChild(entry);
    });
    const caption = byId<HTMLElement>("contour-caption");
    const xName = state.criteria[state.xCriterion]?.name ?? "u1";
    const yName = state.criteria[state.yCriterion]?.name ?? "u2";
    caption.textContent =
        `${contours.model} loss over (${xName}, ${yName}) at pairwise w=${contours.w1.toFixed(3)}`;
}

async function boot(): Promise<void> {
    const errorStrip = byId<HTMLElement>("error-strip");
    let caseStudy: CaseStudyPayload;
    try {
        caseStudy = await fetchCaseStudy();
    } catch (error) {
        showGlobalError(errorStrip, `cannot load case study: ${String(error)}`);
        return;
    }
    state = initialState(caseStudy);
    const restored = decodeState(location.hash);
    if (restored) state = restored;

    buildDatasetEditor();
    buildWeightSliders();
    buildSelectors();
    wireControls();
    runAssess();
}

boot();
