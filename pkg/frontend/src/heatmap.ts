// Canvas rendering for the loss contour map plus pure helpers for the
// color scale, kept separate so they can be tested without a DOM.

import type { ContourResponse } from "./types.js";

// few-stop approximation of a perceptual dark-to-light ramp
const RAMP: [number, number, number][] = [
    [68, 1, 84],
    [59, 82, 139],
    [33, 145, 140],
    [94, 201, 98],
    [253, 231, 37],
];

export function rampColor(t: number): [number, number, number] {
    const clamped = Math.min(1, Math.max(0, t));
    const scaled = clamped * (RAMP.length - 1);
    const low = Math.floor(scaled);
    const high = Math.min(RAMP.length - 1, low + 1);
    const frac = scaled - low;
    const mix = (a: number, b: number) => Math.round(a + (b - a) * frac);
    return [
        mix(RAMP[low][0], RAMP[high][0]),
        mix(RAMP[low][1], RAMP[high][1]),
        mix(RAMP[low][2], RAMP[high][2]),
    ];
}

/** Finite min and max of the loss grid; nulls (infinite loss) ignored. */
export function lossExtent(loss: (number | null)[][]): [number, number] {
    let lo = Infinity;
    let hi = -Infinity;
    for (const row of loss) {
        for (const value of row) {
            if (value === null) continue;
            if (value < lo) lo = value;
            if (value > hi) hi = value;
        }
    }
    if (lo === Infinity) return [0, 1];
    if (lo === hi) return [lo, lo + 1];
    return [lo, hi];
}

export function cellColor(value: number | null, lo: number, hi: number): string {
    if (value === null) return "#1a1028"; // infinite loss, darker than the ramp floor
    const [r, g, b] = rampColor((value - lo) / (hi - lo));
    return `rgb(${r},${g},${b})`;
}

export function drawHeatmap(canvas: HTMLCanvasElement, grid: ContourResponse): void {
    const ctx = canvas.getContext("2d");
    if (!ctx) return;
    const { width, height } = canvas;
    ctx.clearRect(0, 0, width, height);
    const n = grid.axis.length;
    const [lo, hi] = lossExtent(grid.loss);
    const cw = width / n;
    const ch = height / n;
    for (let i = 0; i < n; i++) {
        for (let j = 0; j < n; j++) {
            // loss[i][j] sits at (axis[i], axis[j]); axis[i] runs along x,
            // axis[j] up the y axis with the origin at the bottom left
            ctx.fillStyle = cellColor(grid.loss[i][j], lo, hi);
            ctx.fillRect(i * cw, height - (j + 1) * ch, cw + 0.5, ch + 0.5);
        }
    }
}

/** Scatter posterior partial-value pairs over the drawn grid. */
export function overlayCloud(
    canvas: HTMLCanvasElement,
    points: [number, number][],
    color: string,
): void {
    const ctx = canvas.getContext("2d");
    if (!ctx) return;
    const { width, height } = canvas;
    ctx.fillStyle = color;
    for (const [x, y] of points) {
        ctx.beginPath();
        ctx.arc(x * width, height - y * height, 2.2, 0, Math.PI * 2);
        ctx.fill();
    }
}
