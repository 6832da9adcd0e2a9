// Explorer state and the single transition function. Every control
// change flows through adjust(), which clamps instead of rejecting and
// re-clamps dependent counts so the observed matrix always fits the
// selected slice: a1 + c1 = pos and b1 + d1 = neg at all times.

export type Model = "binomial" | "beta-binomial";

export const MODELS: readonly Model[] = ["binomial", "beta-binomial"];

export interface ViewToggles {
  jointPmf: boolean;
  marginals: boolean;
  counts: boolean;
  histogram: boolean;
  contours: boolean;
  simplex: boolean;
  beyondRoc: boolean;
}

export interface ExplorerState {
  total: number;
  pos: number;
  a1: number;
  d1: number;
  priorU: number;
  priorV: number;
  model: Model;
  metric: string;
  levels: string;
  pointScale: number;
  toggles: ViewToggles;
}

export const MAX_TOTAL = 4000;
export const MAX_PRIOR = 100;
export const POINT_SCALE_RANGE: readonly [number, number] = [0.1, 10];

// Joint grids larger than this are never requested; the render plan
// carries an inline guard notice instead.
export const CLIENT_GRID_GUARD = 1_000_000;

export const DEFAULT_STATE: ExplorerState = {
  total: 60,
  pos: 20,
  a1: 16,
  d1: 32,
  priorU: 1,
  priorV: 1,
  model: "beta-binomial",
  metric: "MCC",
  levels: "",
  pointScale: 1,
  toggles: {
    jointPmf: true,
    marginals: true,
    counts: false,
    histogram: false,
    contours: false,
    simplex: false,
    beyondRoc: false,
  },
};

export function neg(state: ExplorerState): number {
  return state.total - state.pos;
}

export function b1(state: ExplorerState): number {
  return neg(state) - state.d1;
}

export function c1(state: ExplorerState): number {
  return state.pos - state.a1;
}

export type SliderControl =
  | "total"
  | "pos"
  | "a1"
  | "d1"
  | "priorU"
  | "priorV"
  | "pointScale";

export type Control =
  | SliderControl
  | "model"
  | "metric"
  | "levels"
  | keyof ViewToggles;

const TOGGLE_KEYS: readonly (keyof ViewToggles)[] = [
  "jointPmf",
  "marginals",
  "counts",
  "histogram",
  "contours",
  "simplex",
  "beyondRoc",
];

export function isToggle(control: Control): control is keyof ViewToggles {
  return (TOGGLE_KEYS as readonly string[]).includes(control);
}

function clampInt(value: unknown, low: number, high: number, fallback: number): number {
  const v = typeof value === "number" ? value : Number(value);
  if (!Number.isFinite(v)) {
    return fallback;
  }
  return Math.min(high, Math.max(low, Math.round(v)));
}

function clampNumber(value: unknown, low: number, high: number, fallback: number): number {
  const v = typeof value === "number" ? value : Number(value);
  if (!Number.isFinite(v)) {
    return fallback;
  }
  return Math.min(high, Math.max(low, v));
}

// Pure transition: returns a fresh state, never mutates the input,
// and clamps every dependent control so the invariants hold after a
// single call whatever the event was.
export function adjust(state: ExplorerState, control: Control, value: unknown): ExplorerState {
  const next: ExplorerState = { ...state, toggles: { ...state.toggles } };
  switch (control) {
    case "total": {
      next.total = clampInt(value, 1, MAX_TOTAL, state.total);
      next.pos = Math.min(state.pos, next.total);
      break;
    }
    case "pos": {
      next.pos = clampInt(value, 0, state.total, state.pos);
      break;
    }
    case "a1": {
      next.a1 = clampInt(value, 0, state.pos, state.a1);
      break;
    }
    case "d1": {
      next.d1 = clampInt(value, 0, neg(state), state.d1);
      break;
    }
    case "priorU": {
      next.priorU = clampInt(value, 1, MAX_PRIOR, state.priorU);
      break;
    }
    case "priorV": {
      next.priorV = clampInt(value, 1, MAX_PRIOR, state.priorV);
      break;
    }
    case "pointScale": {
      next.pointScale = clampNumber(
        value,
        POINT_SCALE_RANGE[0],
        POINT_SCALE_RANGE[1],
        state.pointScale,
      );
      break;
    }
    case "model": {
      if (value === "binomial" || value === "beta-binomial") {
        next.model = value;
      }
      break;
    }
    case "metric": {
      if (typeof value === "string" && value.trim() !== "") {
        next.metric = value.trim();
      }
      break;
    }
    case "levels": {
      next.levels = typeof value === "string" ? value.trim() : state.levels;
      break;
    }
    default: {
      if (isToggle(control)) {
        next.toggles[control] = Boolean(value);
      }
      break;
    }
  }
  // Re-clamp the dependent counts; a shrunk slice absorbs the excess
  // into the complementary cells (c1 = pos - a1, b1 = neg - d1).
  next.a1 = Math.min(next.a1, next.pos);
  next.d1 = Math.min(next.d1, neg(next));
  return next;
}

export interface StateProblem {
  control: Control;
  message: string;
}

// Invariant audit used by the tests; a healthy state returns [].
export function invariantViolations(state: ExplorerState): StateProblem[] {
  const problems: StateProblem[] = [];
  const check = (ok: boolean, control: Control, message: string) => {
    if (!ok) {
      problems.push({ control, message });
    }
  };
  check(Number.isInteger(state.total) && state.total >= 1, "total", "total must be a positive integer");
  check(state.total <= MAX_TOTAL, "total", "total exceeds the slider range");
  check(Number.isInteger(state.pos) && state.pos >= 0 && state.pos <= state.total, "pos", "pos out of range");
  check(Number.isInteger(state.a1) && state.a1 >= 0 && state.a1 <= state.pos, "a1", "a1 out of range");
  check(Number.isInteger(state.d1) && state.d1 >= 0 && state.d1 <= neg(state), "d1", "d1 out of range");
  check(c1(state) >= 0, "a1", "c1 went negative");
  check(b1(state) >= 0, "d1", "b1 went negative");
  check(state.priorU >= 1 && state.priorV >= 1, "priorU", "prior shapes must be at least 1");
  check(
    state.pointScale >= POINT_SCALE_RANGE[0] && state.pointScale <= POINT_SCALE_RANGE[1],
    "pointScale",
    "point scale out of range",
  );
  check(MODELS.includes(state.model), "model", "unknown model");
  return problems;
}
