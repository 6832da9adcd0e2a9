// Deterministic state -> request mapping. The same state always
// produces the same request list, in the same order, with the same
// byte-for-byte URLs; the views are keyed so the network layer can
// drop stale responses per view.

import type { ExplorerState } from "./state.js";
import { CLIENT_GRID_GUARD, b1, c1, neg } from "./state.js";

export type ViewKey = "joint" | "metric" | "contours" | "simplex";

export interface ViewRequest {
  view: ViewKey;
  path: string;
  url: string;
}

export interface RequestPlan {
  requests: ViewRequest[];
  guard: string | null;
}

function query(pairs: [string, string | number][]): string {
  return pairs
    .map(([k, v]) => `${k}=${encodeURIComponent(String(v)).replace(/%2C/gi, ",")}`)
    .join("&");
}

export const ROC_WINDOW = "0,1,0,1";
export const BEYOND_ROC_WINDOW = "-0.5,1.5,-0.5,1.5";
export const CONTOUR_STEPS = 128;
export const HISTOGRAM_BINS = 25;

export function requestsFor(state: ExplorerState): RequestPlan {
  const n = neg(state);
  const requests: ViewRequest[] = [];
  let guard: string | null = null;

  const obsAndSlice: [string, string | number][] = [
    ["model", state.model],
    ["tp", state.a1],
    ["fp", b1(state)],
    ["fn", c1(state)],
    ["tn", state.d1],
    ["pos", state.pos],
    ["neg", n],
    ["prior", `${state.priorU},${state.priorV}`],
    ["prior_tn", `${state.priorU},${state.priorV}`],
  ];

  const gridCells = state.pos * n;
  const gridAllowed = gridCells <= CLIENT_GRID_GUARD;
  if (!gridAllowed) {
    guard =
      `slice ${state.pos} x ${n} needs a ${gridCells.toLocaleString("en-US")}-cell grid; ` +
      `grids beyond ${CLIENT_GRID_GUARD.toLocaleString("en-US")} cells are not requested`;
  }

  if (gridAllowed && (state.toggles.jointPmf || state.toggles.marginals)) {
    const q = query(obsAndSlice);
    requests.push({ view: "joint", path: "/api/pmf/joint", url: `/api/pmf/joint?${q}` });
  }

  if (gridAllowed) {
    const pairs: [string, string | number][] = [...obsAndSlice, ["metric", state.metric]];
    if (state.toggles.histogram) {
      pairs.push(["bins", HISTOGRAM_BINS]);
    }
    const q = query(pairs);
    requests.push({ view: "metric", path: "/api/pmf/metric", url: `/api/pmf/metric?${q}` });
  }

  if (state.toggles.contours) {
    const pairs: [string, string | number][] = [
      ["metric", state.metric],
      ["pos", state.pos],
      ["neg", n],
      ["steps", CONTOUR_STEPS],
      ["window", state.toggles.beyondRoc ? BEYOND_ROC_WINDOW : ROC_WINDOW],
    ];
    if (state.levels !== "") {
      pairs.push(["levels", state.levels]);
    }
    const q = query(pairs);
    requests.push({ view: "contours", path: "/api/contours", url: `/api/contours?${q}` });
  }

  if (gridAllowed && state.toggles.simplex) {
    const q = query([
      ["kind", "simplex"],
      ["pos", state.pos],
      ["neg", n],
    ]);
    requests.push({ view: "simplex", path: "/api/project", url: `/api/project?${q}` });
  }

  return { requests, guard };
}
