// DOM wiring: sliders and toggles feed adjust(), renders are debounced
// at one in-flight request per view with latest-state-wins, and
// service errors surface in a banner without disturbing the controls.

import { debounce, LatestWins, ServiceError } from "./net.js";
import { requestsFor } from "./requests.js";
import type { Control, ExplorerState } from "./state.js";
import { adjust, b1, c1, DEFAULT_STATE, isToggle, MAX_TOTAL, neg } from "./state.js";
import type {
  ContoursPayload,
  JointPayload,
  MetricPmfPayload,
  MetricsListPayload,
  ProjectPayload,
} from "./types.js";
import { paintJoint, paintMarginal, paintMetric, paintSimplex, ROC_UNIT, ROC_WIDE } from "./plots.js";
import type { Payloads } from "./viewmodel.js";
import { buildViewModel } from "./viewmodel.js";

const serviceBase = new URLSearchParams(window.location.search).get("service") ?? "";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (node === null) {
    throw new Error(`missing element #${id}`);
  }
  return node as T;
}

const canvases = {
  joint: el<HTMLCanvasElement>("joint-canvas"),
  tpr: el<HTMLCanvasElement>("tpr-canvas"),
  fpr: el<HTMLCanvasElement>("fpr-canvas"),
  metric: el<HTMLCanvasElement>("metric-canvas"),
  simplex: el<HTMLCanvasElement>("simplex-canvas"),
};
const banner = el<HTMLDivElement>("banner");
const summaryBox = el<HTMLDivElement>("summary");

let state: ExplorerState = DEFAULT_STATE;
let payloads: Payloads = {};
const net = new LatestWins((url) => fetch(serviceBase + url));
let orbit = { azimuth: 0.7, elevation: 0.5 };

function context(canvas: HTMLCanvasElement): CanvasRenderingContext2D {
  const ctx = canvas.getContext("2d");
  if (ctx === null) {
    throw new Error("canvas 2d context unavailable");
  }
  return ctx;
}

function paint(): void {
  const vm = buildViewModel(state, payloads);
  const win = state.toggles.beyondRoc && state.toggles.contours ? ROC_WIDE : ROC_UNIT;
  paintJoint(context(canvases.joint), vm.joint, vm.contours, win, state.pointScale);
  paintMarginal(context(canvases.tpr), vm.marginals?.tpr ?? [], "true positive rate");
  paintMarginal(context(canvases.fpr), vm.marginals?.fpr ?? [], "false positive rate");
  paintMetric(context(canvases.metric), vm.metric, state.toggles.counts);
  canvases.simplex.parentElement?.classList.toggle("hidden", !state.toggles.simplex);
  paintSimplex(context(canvases.simplex), vm.simplex, orbit.azimuth, orbit.elevation);
  const parts: string[] = [];
  if (vm.metric?.summary) {
    const s = vm.metric.summary;
    parts.push(
      `mean ${s.mean ?? "n/a"}, sd ${s.sd ?? "n/a"}, ` +
        `${s.level} interval [${s.interval[0] ?? "n/a"}, ${s.interval[1] ?? "n/a"}]`,
    );
  }
  if (vm.metric && vm.metric.undefinedCount > 0) {
    parts.push(`undefined: ${vm.metric.undefinedCount} points, mass ${vm.metric.undefinedMass}`);
  }
  if (vm.metric) {
    for (const inf of vm.metric.infinite) {
      parts.push(`${inf.label}: mass ${inf.mass}`);
    }
  }
  summaryBox.textContent = parts.join(" | ");
}

function setBanner(text: string, kind: "error" | "guard" | "clear"): void {
  banner.textContent = text;
  banner.className = kind === "clear" ? "banner" : `banner ${kind}`;
}

async function refresh(): Promise<void> {
  const snapshot = state;
  const plan = requestsFor(snapshot);
  if (plan.guard !== null) {
    setBanner(plan.guard, "guard");
  } else {
    setBanner("", "clear");
  }
  const next: Payloads = {};
  await Promise.all(
    plan.requests.map(async (req) => {
      try {
        switch (req.view) {
          case "joint": {
            const p = await net.issue<JointPayload>(req.view, req.url);
            if (p !== null) {
              next.joint = p;
            }
            break;
          }
          case "metric": {
            const p = await net.issue<MetricPmfPayload>(req.view, req.url);
            if (p !== null) {
              next.metric = p;
            }
            break;
          }
          case "contours": {
            const p = await net.issue<ContoursPayload>(req.view, req.url);
            if (p !== null) {
              next.contours = p;
            }
            break;
          }
          case "simplex": {
            const p = await net.issue<ProjectPayload>(req.view, req.url);
            if (p !== null) {
              next.simplex = p;
            }
            break;
          }
        }
      } catch (err) {
        if (err instanceof ServiceError) {
          setBanner(`${err.code}: ${err.message}`, "error");
        } else {
          setBanner(`request failed: ${String(err)}`, "error");
        }
      }
    }),
  );
  if (state === snapshot) {
    payloads = next;
    paint();
  }
}

const scheduleRefresh = debounce(() => {
  void refresh();
}, 150);

function syncControls(): void {
  const items: [string, string | number][] = [
    ["total", state.total],
    ["pos", state.pos],
    ["a1", state.a1],
    ["d1", state.d1],
    ["priorU", state.priorU],
    ["priorV", state.priorV],
    ["pointScale", state.pointScale],
  ];
  for (const [id, value] of items) {
    const input = el<HTMLInputElement>(`ctl-${id}`);
    input.value = String(value);
    const label = document.getElementById(`val-${id}`);
    if (label !== null) {
      label.textContent = String(value);
    }
  }
  el<HTMLInputElement>("ctl-pos").max = String(state.total);
  el<HTMLInputElement>("ctl-a1").max = String(state.pos);
  el<HTMLInputElement>("ctl-d1").max = String(neg(state));
  el<HTMLSelectElement>("ctl-model").value = state.model;
  el<HTMLSelectElement>("ctl-metric").value = state.metric;
  el<HTMLInputElement>("ctl-levels").value = state.levels;
  for (const key of Object.keys(state.toggles) as (keyof typeof state.toggles)[]) {
    el<HTMLInputElement>(`ctl-${key}`).checked = state.toggles[key];
  }
  el<HTMLSpanElement>("derived").textContent =
    `neg = ${neg(state)}, observed matrix (tp, fp, fn, tn) = ` +
    `(${state.a1}, ${b1(state)}, ${c1(state)}, ${state.d1})`;
}

function onControl(control: Control, value: unknown): void {
  state = adjust(state, control, value);
  syncControls();
  paint();
  scheduleRefresh();
}

function bind(): void {
  const sliders: Control[] = ["total", "pos", "a1", "d1", "priorU", "priorV", "pointScale"];
  for (const control of sliders) {
    const input = el<HTMLInputElement>(`ctl-${control}`);
    input.addEventListener("input", () => onControl(control, Number(input.value)));
  }
  el<HTMLInputElement>("ctl-total").max = String(MAX_TOTAL);
  const model = el<HTMLSelectElement>("ctl-model");
  model.addEventListener("change", () => onControl("model", model.value));
  const metric = el<HTMLSelectElement>("ctl-metric");
  metric.addEventListener("change", () => onControl("metric", metric.value));
  const levels = el<HTMLInputElement>("ctl-levels");
  levels.addEventListener("change", () => onControl("levels", levels.value));
  for (const key of Object.keys(state.toggles)) {
    const box = el<HTMLInputElement>(`ctl-${key}`);
    box.addEventListener("change", () => onControl(key as Control, box.checked));
  }
  let dragging = false;
  let last = { x: 0, y: 0 };
  canvases.simplex.addEventListener("mousedown", (ev) => {
    dragging = true;
    last = { x: ev.clientX, y: ev.clientY };
  });
  window.addEventListener("mouseup", () => {
    dragging = false;
  });
  window.addEventListener("mousemove", (ev) => {
    if (!dragging) {
      return;
    }
    orbit = {
      azimuth: orbit.azimuth + (ev.clientX - last.x) * 0.01,
      elevation: Math.max(-1.4, Math.min(1.4, orbit.elevation + (ev.clientY - last.y) * 0.01)),
    };
    last = { x: ev.clientX, y: ev.clientY };
    paint();
  });
}

async function loadMetricList(): Promise<void> {
  try {
    const payload = await net.issue<MetricsListPayload>("metrics", "/api/metrics");
    if (payload === null) {
      return;
    }
    const select = el<HTMLSelectElement>("ctl-metric");
    select.innerHTML = "";
    for (const info of payload.metrics) {
      const option = document.createElement("option");
      option.value = info.id;
      option.textContent = `${info.id} (${info.label})`;
      select.append(option);
    }
    select.value = state.metric;
  } catch (err) {
    setBanner(`could not load metric list: ${String(err)}`, "error");
  }
}

bind();
syncControls();
void loadMetricList();
void refresh();
