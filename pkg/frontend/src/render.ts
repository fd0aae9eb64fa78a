// DOM rendering. Every number shown here came back from the service;
// this module only formats and positions.

import type { AssessResponse, Comparison, FieldError, MappedWeights, ModelName } from "./types.js";
import { MODELS } from "./types.js";

export function formatProbability(p: number): string {
    if (p > 0 && p < 0.001) return "<0.1%";
    if (p < 1 && p > 0.999) return ">99.9%";
    return `${(100 * p).toFixed(1)}%`;
}

function decisionLabel(comparison: Comparison): string {
    if (comparison.decision === "recommend_i") return `recommend ${comparison.arm_i}`;
    if (comparison.decision === "recommend_h") return `recommend ${comparison.arm_h}`;
    return "no recommendation";
}

export function renderBars(
    container: HTMLElement,
    report: AssessResponse,
    annihilated: string[],
): void {
    container.replaceChildren();
    for (const comparison of report.comparisons) {
        const row = document.createElement("div");
        row.className = "bar-row";

        const label = document.createElement("div");
        label.className = "bar-label";
        label.textContent = `${comparison.arm_i} vs ${comparison.arm_h}`;
        for (const name of [comparison.arm_i, comparison.arm_h]) {
            if (annihilated.includes(name)) {
                const badge = document.createElement("span");
                badge.className = "badge";
                badge.textContent = `annihilated: ${name}`;
                badge.title = "an outcome pins this arm's partial value at 0 on every draw";
                label.appendChild(badge);
            }
        }

        const track = document.createElement("div");
        track.className = "bar-track";
        const fill = document.createElement("div");
        fill.className = "bar-fill";
        fill.style.width = `${(100 * comparison.probability).toFixed(2)}%`;
        track.appendChild(fill);
        // threshold ticks: recommend arm i above psi, arm h below 1 - psi
        for (const threshold of [report.psi, 1 - report.psi]) {
            const tick = document.createElement("div");
            tick.className = "bar-tick";
            tick.style.left = `${(100 * threshold).toFixed(2)}%`;
            tick.title = `threshold ${threshold.toFixed(2)}`;
            track.appendChild(tick);
        }

        const value = document.createElement("div");
        value.className = "bar-value";
        value.textContent = formatProbability(comparison.probability);

        const decision = document.createElement("div");
        decision.className = `decision ${comparison.decision}`;
        decision.textContent = decisionLabel(comparison);

        row.append(label, track, value, decision);
        container.appendChild(row);
    }
}

export function renderMappedTable(
    table: HTMLTableElement,
    mapped: MappedWeights,
    criteriaNames: string[],
    activeModel: ModelName,
): void {
    table.replaceChildren();
    const head = table.createTHead().insertRow();
    head.insertCell().textContent = "model";
    for (const name of criteriaNames) head.insertCell().textContent = name;
    head.insertCell().textContent = "c";
    const body = table.createTBody();
    for (const model of MODELS) {
        const rowData = mapped[model];
        if (!rowData) continue;
        const row = body.insertRow();
        if (model === activeModel) row.className = "active-model";
        row.insertCell().textContent = model;
        for (const w of rowData.weights) {
            row.insertCell().textContent = w.toFixed(4);
        }
        row.insertCell().textContent =
            model === "multilinear" ? rowData.interaction_mass.toFixed(2) : "";
    }
}

export function renderRunInfo(container: HTMLElement, report: AssessResponse): void {
    container.textContent =
        `model ${report.model}, m=${report.samples.toLocaleString("en-US")}, ` +
        `seed ${report.seed}, psi ${report.psi}`;
}

// Inline errors: each input carries a data-field attribute matching the
// service's field paths, so 4xx details and client-side checks land in
// the same place next to the control.

export function clearFieldErrors(root: ParentNode): void {
    root.querySelectorAll(".field-error").forEach((node) => node.remove());
    root.querySelectorAll(".invalid").forEach((node) => node.classList.remove("invalid"));
}

function findField(root: ParentNode, field: string): Element | null {
    const exact = root.querySelector(`[data-field="${field}"]`);
    if (exact) return exact;
    // the service sometimes reports a coarser path than a single input,
    // e.g. arms[0].outcomes[0] for a bad count pair; attach to the first
    // control under that path
    for (const node of root.querySelectorAll("[data-field]")) {
        const path = (node as HTMLElement).dataset.field ?? "";
        if (path.startsWith(field) || field.startsWith(path)) return node;
    }
    return null;
}

export function showFieldErrors(root: ParentNode, fields: FieldError[], fallback: HTMLElement): void {
    const unplaced: string[] = [];
    for (const issue of fields) {
        const input = findField(root, issue.field);
        if (input instanceof HTMLElement) {
            input.classList.add("invalid");
            const note = document.createElement("span");
            note.className = "field-error";
            note.textContent = issue.message;
            input.insertAdjacentElement("afterend", note);
        } else {
            unplaced.push(`${issue.field}: ${issue.message}`);
        }
    }
    if (unplaced.length > 0) {
        showGlobalError(fallback, unplaced.join("; "));
    }
}

export function showGlobalError(strip: HTMLElement, message: string): void {
    strip.textContent = message;
    strip.hidden = false;
}

export function clearGlobalError(strip: HTMLElement): void {
    strip.textContent = "";
    strip.hidden = true;
}
