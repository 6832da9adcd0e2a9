// Canvas painters. Thin presentation layer over the view models: all
// data values come in via the view model; this file only maps them to
// pixels.

import type {
  ContoursView,
  JointView,
  MarginalPoint,
  MetricView,
  SimplexView,
} from "./viewmodel.js";

export interface DataWindow {
  x0: number;
  x1: number;
  y0: number;
  y1: number;
}

export const ROC_UNIT: DataWindow = { x0: 0, x1: 1, y0: 0, y1: 1 };
export const ROC_WIDE: DataWindow = { x0: -0.5, x1: 1.5, y0: -0.5, y1: 1.5 };

const PAD = 34;

interface Mapper {
  x(v: number): number;
  y(v: number): number;
}

function mapper(canvas: HTMLCanvasElement, win: DataWindow): Mapper {
  const w = canvas.width - 2 * PAD;
  const h = canvas.height - 2 * PAD;
  return {
    x: (v) => PAD + ((v - win.x0) / (win.x1 - win.x0)) * w,
    y: (v) => canvas.height - PAD - ((v - win.y0) / (win.y1 - win.y0)) * h,
  };
}

function clear(ctx: CanvasRenderingContext2D): void {
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
}

function frame(ctx: CanvasRenderingContext2D, win: DataWindow, xLabel: string, yLabel: string): Mapper {
  const m = mapper(ctx.canvas, win);
  ctx.strokeStyle = "#666";
  ctx.lineWidth = 1;
  ctx.strokeRect(m.x(win.x0), m.y(win.y1), m.x(win.x1) - m.x(win.x0), m.y(win.y0) - m.y(win.y1));
  ctx.fillStyle = "#444";
  ctx.font = "11px sans-serif";
  ctx.textAlign = "center";
  ctx.fillText(xLabel, (m.x(win.x0) + m.x(win.x1)) / 2, ctx.canvas.height - 8);
  ctx.save();
  ctx.translate(12, (m.y(win.y0) + m.y(win.y1)) / 2);
  ctx.rotate(-Math.PI / 2);
  ctx.fillText(yLabel, 0, 0);
  ctx.restore();
  ctx.fillText(String(win.x0), m.x(win.x0), ctx.canvas.height - 20);
  ctx.fillText(String(win.x1), m.x(win.x1), ctx.canvas.height - 20);
  ctx.textAlign = "right";
  ctx.fillText(String(win.y0), m.x(win.x0) - 4, m.y(win.y0) + 4);
  ctx.fillText(String(win.y1), m.x(win.x0) - 4, m.y(win.y1) + 4);
  ctx.textAlign = "left";
  return m;
}

// Joint pmf over ROC points; circle AREA is proportional to mass, so
// the radius scales with sqrt(mass) times the user's point-size factor.
export function paintJoint(
  ctx: CanvasRenderingContext2D,
  view: JointView | null,
  contours: ContoursView | null,
  win: DataWindow,
  pointScale: number,
): void {
  clear(ctx);
  const m = frame(ctx, win, "false positive rate", "true positive rate");
  if (contours !== null) {
    for (const line of contours.polylines) {
      ctx.strokeStyle = line.branch === -1 ? "#b54a1f" : "#1f6fb5";
      ctx.lineWidth = 1;
      ctx.beginPath();
      line.points.forEach(([x, y], i) => {
        if (i === 0) {
          ctx.moveTo(m.x(x), m.y(y));
        } else {
          ctx.lineTo(m.x(x), m.y(y));
        }
      });
      ctx.stroke();
    }
  }
  if (view !== null) {
    ctx.fillStyle = "rgba(31, 111, 181, 0.55)";
    const base = 34 * pointScale;
    for (const c of view.circles) {
      const r = Math.max(0.4, base * Math.sqrt(c.mass));
      ctx.beginPath();
      ctx.arc(m.x(c.fpr), m.y(c.tpr), r, 0, 2 * Math.PI);
      ctx.fill();
    }
  }
}

export function paintMarginal(
  ctx: CanvasRenderingContext2D,
  points: MarginalPoint[],
  label: string,
): void {
  clear(ctx);
  if (points.length === 0) {
    return;
  }
  let top = 0;
  for (const pt of points) {
    top = Math.max(top, pt.mass);
  }
  const win: DataWindow = { x0: 0, x1: 1, y0: 0, y1: top > 0 ? top * 1.08 : 1 };
  const m = frame(ctx, win, label, "mass");
  ctx.strokeStyle = "#2a7d4f";
  ctx.fillStyle = "#2a7d4f";
  ctx.lineWidth = 2;
  for (const pt of points) {
    ctx.beginPath();
    ctx.moveTo(m.x(pt.rate), m.y(0));
    ctx.lineTo(m.x(pt.rate), m.y(pt.mass));
    ctx.stroke();
    ctx.beginPath();
    ctx.arc(m.x(pt.rate), m.y(pt.mass), 2.2, 0, 2 * Math.PI);
    ctx.fill();
  }
}

// Metric pmf stems with the MAP line; optional multiplicity labels and
// histogram overlay.
export function paintMetric(
  ctx: CanvasRenderingContext2D,
  view: MetricView | null,
  showCounts: boolean,
): void {
  clear(ctx);
  if (view === null || view.stems.length === 0) {
    return;
  }
  let lo = Infinity;
  let hi = -Infinity;
  let top = 0;
  for (const s of view.stems) {
    lo = Math.min(lo, s.x);
    hi = Math.max(hi, s.x);
    top = Math.max(top, s.mass);
  }
  if (lo === hi) {
    lo -= 0.5;
    hi += 0.5;
  }
  const spanPad = (hi - lo) * 0.04;
  const win: DataWindow = {
    x0: lo - spanPad,
    x1: hi + spanPad,
    y0: 0,
    y1: top > 0 ? top * 1.12 : 1,
  };
  const m = frame(ctx, win, view.metric, "mass");
  if (view.histogram && view.histogram.low !== null && view.histogram.high !== null) {
    const { low, high, masses } = view.histogram;
    const width = (high - low) / view.histogram.bins;
    ctx.fillStyle = "rgba(150, 150, 150, 0.25)";
    masses.forEach((massPayload, i) => {
      const mass = massPayload.float ?? 0;
      if (mass > 0) {
        const x = low + i * width;
        ctx.fillRect(m.x(x), m.y(mass), m.x(x + width) - m.x(x), m.y(0) - m.y(mass));
      }
    });
  }
  ctx.strokeStyle = "#444";
  ctx.lineWidth = 1.4;
  for (const s of view.stems) {
    ctx.beginPath();
    ctx.moveTo(m.x(s.x), m.y(0));
    ctx.lineTo(m.x(s.x), m.y(s.mass));
    ctx.stroke();
  }
  if (view.mapX !== null && Number.isFinite(view.mapX)) {
    ctx.strokeStyle = "#c0392b";
    ctx.lineWidth = 1.6;
    ctx.setLineDash([5, 3]);
    ctx.beginPath();
    ctx.moveTo(m.x(view.mapX), m.y(win.y0));
    ctx.lineTo(m.x(view.mapX), m.y(win.y1));
    ctx.stroke();
    ctx.setLineDash([]);
  }
  if (showCounts) {
    ctx.fillStyle = "#1f6fb5";
    ctx.font = "9px sans-serif";
    ctx.textAlign = "center";
    for (const s of view.stems) {
      if (s.mass > top * 0.04) {
        ctx.fillText(String(s.count), m.x(s.x), m.y(s.mass) - 3);
      }
    }
  }
}

// Orthographic 3D scatter of a projected slice with basic orbit angles.
export function paintSimplex(
  ctx: CanvasRenderingContext2D,
  view: SimplexView | null,
  azimuth: number,
  elevation: number,
): void {
  clear(ctx);
  if (view === null || view.points.length === 0) {
    return;
  }
  const ca = Math.cos(azimuth);
  const sa = Math.sin(azimuth);
  const ce = Math.cos(elevation);
  const se = Math.sin(elevation);
  const rotated = view.points.map(({ xyz }) => {
    const [x, y, z] = xyz;
    const rx = ca * x + sa * y;
    const ry = -sa * x + ca * y;
    const ru = ce * ry - se * z;
    const rv = se * ry + ce * z;
    return { u: rx, v: rv, depth: ru };
  });
  let uLo = Infinity;
  let uHi = -Infinity;
  let vLo = Infinity;
  let vHi = -Infinity;
  for (const r of rotated) {
    uLo = Math.min(uLo, r.u);
    uHi = Math.max(uHi, r.u);
    vLo = Math.min(vLo, r.v);
    vHi = Math.max(vHi, r.v);
  }
  const span = Math.max(uHi - uLo, vHi - vLo, 1e-9);
  const scale = (Math.min(ctx.canvas.width, ctx.canvas.height) - 2 * PAD) / span;
  const cx = ctx.canvas.width / 2;
  const cy = ctx.canvas.height / 2;
  const u0 = (uLo + uHi) / 2;
  const v0 = (vLo + vHi) / 2;
  for (const r of rotated) {
    const shade = 120 + Math.max(-60, Math.min(60, r.depth * scale * 0.25));
    ctx.fillStyle = `rgb(${40}, ${Math.round(shade)}, ${Math.round(200 - shade / 3)})`;
    ctx.beginPath();
    ctx.arc(cx + (r.u - u0) * scale, cy - (r.v - v0) * scale, 2.4, 0, 2 * Math.PI);
    ctx.fill();
  }
}
