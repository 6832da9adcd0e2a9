import { describe, expect, it } from "vitest";

import {
  adjust,
  b1,
  c1,
  Control,
  DEFAULT_STATE,
  ExplorerState,
  invariantViolations,
  MAX_TOTAL,
  neg,
} from "../src/state.js";
import { requestsFor } from "../src/requests.js";

describe("default state", () => {
  it("matches the recommended starting configuration", () => {
    expect(DEFAULT_STATE.total).toBe(60);
    expect(DEFAULT_STATE.pos).toBe(20);
    expect(neg(DEFAULT_STATE)).toBe(40);
    expect(DEFAULT_STATE.a1).toBe(16);
    expect(DEFAULT_STATE.d1).toBe(32);
    expect(b1(DEFAULT_STATE)).toBe(8);
    expect(c1(DEFAULT_STATE)).toBe(4);
    expect(DEFAULT_STATE.model).toBe("beta-binomial");
    expect(DEFAULT_STATE.metric).toBe("MCC");
    expect(DEFAULT_STATE.toggles.jointPmf).toBe(true);
    expect(DEFAULT_STATE.toggles.marginals).toBe(true);
    expect(DEFAULT_STATE.toggles.contours).toBe(false);
    expect(DEFAULT_STATE.toggles.beyondRoc).toBe(false);
    expect(invariantViolations(DEFAULT_STATE)).toEqual([]);
  });
});

describe("clamp rules", () => {
  it("growing pos beyond a1 + c1 lets c1 absorb the difference", () => {
    const next = adjust(DEFAULT_STATE, "pos", 25);
    expect(next.pos).toBe(25);
    expect(next.a1).toBe(16);
    expect(c1(next)).toBe(9);
    expect(neg(next)).toBe(35);
    expect(next.d1).toBe(32);
    expect(b1(next)).toBe(3);
  });

  it("shrinking pos clamps a1 down with it", () => {
    const next = adjust(DEFAULT_STATE, "pos", 10);
    expect(next.pos).toBe(10);
    expect(next.a1).toBe(10);
    expect(c1(next)).toBe(0);
    expect(next.d1).toBe(32);
  });

  it("shrinking the total re-clamps the whole chain", () => {
    const next = adjust(DEFAULT_STATE, "total", 30);
    expect(next.total).toBe(30);
    expect(next.pos).toBe(20);
    expect(neg(next)).toBe(10);
    expect(next.a1).toBe(16);
    expect(next.d1).toBe(10);
    expect(b1(next)).toBe(0);
    expect(invariantViolations(next)).toEqual([]);
  });

  it("raising the negative count by one keeps the observed counts", () => {
    const next = adjust(DEFAULT_STATE, "total", 61);
    expect(next.pos).toBe(20);
    expect(neg(next)).toBe(41);
    expect(next.a1).toBe(16);
    expect(next.d1).toBe(32);
    expect(b1(next)).toBe(9);
  });

  it("clamps instead of rejecting out-of-range values", () => {
    expect(adjust(DEFAULT_STATE, "a1", 999).a1).toBe(20);
    expect(adjust(DEFAULT_STATE, "a1", -5).a1).toBe(0);
    expect(adjust(DEFAULT_STATE, "d1", 999).d1).toBe(40);
    expect(adjust(DEFAULT_STATE, "total", 10 ** 9).total).toBe(MAX_TOTAL);
    expect(adjust(DEFAULT_STATE, "total", 0).total).toBe(1);
    expect(adjust(DEFAULT_STATE, "priorU", 0).priorU).toBe(1);
    expect(adjust(DEFAULT_STATE, "pointScale", 99).pointScale).toBe(10);
    expect(adjust(DEFAULT_STATE, "pointScale", 0).pointScale).toBe(0.1);
  });

  it("ignores unknown model strings and keeps the state valid", () => {
    const next = adjust(DEFAULT_STATE, "model", "poisson");
    expect(next.model).toBe("beta-binomial");
    expect(adjust(DEFAULT_STATE, "model", "binomial").model).toBe("binomial");
  });

  it("non-numeric slider input leaves the value unchanged", () => {
    expect(adjust(DEFAULT_STATE, "pos", "wat").pos).toBe(20);
    expect(adjust(DEFAULT_STATE, "total", Number.NaN).total).toBe(60);
  });

  it("never mutates the input state", () => {
    const before = JSON.stringify(DEFAULT_STATE);
    adjust(DEFAULT_STATE, "pos", 3);
    adjust(DEFAULT_STATE, "contours", true);
    expect(JSON.stringify(DEFAULT_STATE)).toBe(before);
  });

  it("toggles flip independently", () => {
    const a = adjust(DEFAULT_STATE, "contours", true);
    expect(a.toggles.contours).toBe(true);
    expect(a.toggles.jointPmf).toBe(true);
    const b = adjust(a, "beyondRoc", true);
    expect(b.toggles.beyondRoc).toBe(true);
    expect(b.toggles.contours).toBe(true);
  });
});

// Deterministic pseudo-random generator for the scripted fuzz run.
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

const FUZZ_CONTROLS: Control[] = [
  "total",
  "pos",
  "a1",
  "d1",
  "priorU",
  "priorV",
  "pointScale",
  "model",
  "metric",
  "levels",
  "jointPmf",
  "marginals",
  "counts",
  "histogram",
  "contours",
  "simplex",
  "beyondRoc",
];

function fuzzEvent(rng: () => number): [Control, unknown] {
  const control = FUZZ_CONTROLS[Math.floor(rng() * FUZZ_CONTROLS.length)]!;
  switch (control) {
    case "total":
      return [control, Math.floor(rng() * 9000) - 200];
    case "pos":
    case "a1":
    case "d1":
      return [control, Math.floor(rng() * 5200) - 300];
    case "priorU":
    case "priorV":
      return [control, Math.floor(rng() * 220) - 40];
    case "pointScale":
      return [control, rng() * 30 - 5];
    case "model":
      return [control, rng() < 0.5 ? "binomial" : "beta-binomial"];
    case "metric":
      return [control, ["MCC", "BA", "F1", "DOR", "PT", "Acc"][Math.floor(rng() * 6)]];
    case "levels":
      return [control, rng() < 0.5 ? "" : "-0.5,0,0.5"];
    default:
      return [control, rng() < 0.5];
  }
}

function runScript(seed: number, events: number): { states: ExplorerState[]; urls: string[] } {
  const rng = mulberry32(seed);
  let state = DEFAULT_STATE;
  const states: ExplorerState[] = [];
  const urls: string[] = [];
  for (let i = 0; i < events; i += 1) {
    const [control, value] = fuzzEvent(rng);
    state = adjust(state, control, value);
    states.push(state);
    urls.push(...requestsFor(state).requests.map((r) => r.url));
  }
  return { states, urls };
}

describe("scripted fuzz", () => {
  it("holds every clamp invariant across 100 random events", () => {
    const rng = mulberry32(20260816);
    let state = DEFAULT_STATE;
    for (let i = 0; i < 100; i += 1) {
      const [control, value] = fuzzEvent(rng);
      state = adjust(state, control, value);
      const problems = invariantViolations(state);
      expect(problems, `event ${i}: ${String(control)}=${String(value)}`).toEqual([]);
      expect(state.a1 + c1(state)).toBe(state.pos);
      expect(b1(state) + state.d1).toBe(neg(state));
      const plan = requestsFor(state);
      const grid = state.pos * neg(state);
      if (grid > 1_000_000) {
        expect(plan.guard).not.toBeNull();
        for (const req of plan.requests) {
          expect(req.path).not.toContain("/api/pmf/");
          expect(req.path).not.toBe("/api/project");
        }
      } else {
        expect(plan.guard).toBeNull();
      }
    }
  });

  it("replaying the same script reproduces identical states and requests", () => {
    const first = runScript(424242, 100);
    const second = runScript(424242, 100);
    expect(second.states).toEqual(first.states);
    expect(second.urls).toEqual(first.urls);
    expect(first.urls.length).toBeGreaterThan(100);
  });
});
