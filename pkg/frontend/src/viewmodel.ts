// View models bound to service payloads. Builders reshape payloads for
// the painters; every plotted number (rates, masses, values, contour
// vertices) is taken from the service response, never recomputed here.

import type { ExplorerState } from "./state.js";
import type {
  ContoursPayload,
  JointPayload,
  MetricPmfPayload,
  MetricSummaryPayload,
  ProjectPayload,
} from "./types.js";

export interface JointCircle {
  fpr: number;
  tpr: number;
  mass: number;
}

export interface JointView {
  p: number;
  n: number;
  circles: JointCircle[];
}

export interface MarginalPoint {
  rate: number;
  mass: number;
}

export interface MarginalsView {
  tpr: MarginalPoint[];
  fpr: MarginalPoint[];
}

export interface MetricStem {
  x: number;
  mass: number;
  count: number;
}

export interface InfiniteMass {
  label: string;
  mass: number;
}

export interface MetricView {
  metric: string;
  stems: MetricStem[];
  infinite: InfiniteMass[];
  mapX: number | null;
  undefinedMass: number;
  undefinedCount: number;
  summary: MetricSummaryPayload | null;
  histogram: MetricPmfPayload["histogram"] | null;
}

export interface ContourPolyline {
  display: number | null;
  branch: number;
  points: [number, number][];
}

export interface ContoursView {
  metric: string;
  window: [number, number, number, number];
  polylines: ContourPolyline[];
}

export interface SimplexView {
  points: { matrix: number[]; xyz: [number, number, number] }[];
}

export function buildJointView(payload: JointPayload): JointView {
  const circles: JointCircle[] = [];
  const { grid, tpr_marginal: tprM, fpr_marginal: fprM, n } = payload;
  if (grid !== null && tprM !== null && fprM !== null) {
    for (let a = 0; a < grid.length; a += 1) {
      const row = grid[a];
      const tpr = tprM[a]?.rate.float;
      if (row === undefined || tpr === undefined || tpr === null) {
        continue;
      }
      for (let d = 0; d < row.length; d += 1) {
        const mass = row[d];
        const fpr = fprM[n - d]?.rate.float;
        if (mass === undefined || mass <= 0 || fpr === undefined || fpr === null) {
          continue;
        }
        circles.push({ fpr, tpr, mass });
      }
    }
  }
  return { p: payload.p, n: payload.n, circles };
}

function marginalPoints(list: JointPayload["tpr_marginal"]): MarginalPoint[] {
  if (list === null) {
    return [];
  }
  const points: MarginalPoint[] = [];
  for (const e of list) {
    if (e.rate.float !== null && e.mass.float !== null) {
      points.push({ rate: e.rate.float, mass: e.mass.float });
    }
  }
  return points;
}

export function buildMarginalsView(payload: JointPayload): MarginalsView {
  return {
    tpr: marginalPoints(payload.tpr_marginal),
    fpr: marginalPoints(payload.fpr_marginal),
  };
}

export function buildMetricView(payload: MetricPmfPayload): MetricView {
  const stems: MetricStem[] = [];
  const infinite: InfiniteMass[] = [];
  for (const e of payload.entries) {
    const x = e.value.float;
    const mass = e.mass.float ?? 0;
    if (x !== null && Number.isFinite(x)) {
      stems.push({ x, mass, count: e.count });
    } else {
      infinite.push({ label: e.value.kind === "neg_inf" ? "-inf" : "+inf", mass });
    }
  }
  return {
    metric: payload.metric,
    stems,
    infinite,
    mapX: payload.map === null ? null : payload.map.float,
    undefinedMass: payload.undefined.mass.float ?? 0,
    undefinedCount: payload.undefined.count,
    summary: payload.summary,
    histogram: payload.histogram ?? null,
  };
}

export function buildContoursView(payload: ContoursPayload): ContoursView {
  const polylines: ContourPolyline[] = [];
  for (const item of payload.contours) {
    for (const line of item.lines) {
      const points: [number, number][] = [];
      for (const [x, y] of line.points) {
        if (x !== null && y !== null) {
          points.push([x, y]);
        }
      }
      if (points.length >= 2) {
        polylines.push({ display: item.display, branch: line.branch, points });
      }
    }
  }
  return { metric: payload.metric, window: payload.window, polylines };
}

export function buildSimplexView(payload: ProjectPayload): SimplexView {
  return { points: payload.points.map((pt) => ({ matrix: pt.matrix, xyz: pt.xyz })) };
}

export interface Payloads {
  joint?: JointPayload;
  metric?: MetricPmfPayload;
  contours?: ContoursPayload;
  simplex?: ProjectPayload;
}

export interface ViewModel {
  joint: JointView | null;
  marginals: MarginalsView | null;
  metric: MetricView | null;
  contours: ContoursView | null;
  simplex: SimplexView | null;
}

// Compose the bound plots for one state snapshot: only views that are
// toggled on and whose payload arrived are present, so a render never
// mixes views from different states.
export function buildViewModel(state: ExplorerState, payloads: Payloads): ViewModel {
  return {
    joint: state.toggles.jointPmf && payloads.joint ? buildJointView(payloads.joint) : null,
    marginals:
      state.toggles.marginals && payloads.joint ? buildMarginalsView(payloads.joint) : null,
    metric: payloads.metric ? buildMetricView(payloads.metric) : null,
    contours:
      state.toggles.contours && payloads.contours ? buildContoursView(payloads.contours) : null,
    simplex:
      state.toggles.simplex && payloads.simplex ? buildSimplexView(payloads.simplex) : null,
  };
}
