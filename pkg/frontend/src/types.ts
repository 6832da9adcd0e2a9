// Typed shapes of the service's JSON payloads. Exact rationals arrive
// as decimal-string num/den plus a convenience float; metric values
// carry their kind tag and a display-space float (null when the
// display value is infinite or undefined).

export interface FracPayload {
  num: string;
  den: string;
  float: number | null;
}

export interface ValuePayload {
  kind: "rational" | "sqrt" | "pos_inf" | "neg_inf" | "undefined";
  sign?: number;
  num?: string;
  den?: string;
  float: number | null;
}

export interface RatePointPayload {
  rate: FracPayload;
  mass: FracPayload;
}

export interface JointPayload {
  model: string;
  obs: number[];
  p: number;
  n: number;
  prior_tp: string[];
  prior_tn: string[];
  tp_margin: FracPayload[];
  tn_margin: FracPayload[];
  tpr_marginal: RatePointPayload[] | null;
  fpr_marginal: RatePointPayload[] | null;
  grid: number[][] | null;
}

export interface MetricEntryPayload {
  value: ValuePayload;
  mass: FracPayload;
  count: number;
}

export interface MetricSummaryPayload {
  mean: number | null;
  sd: number | null;
  interval: [number | null, number | null];
  interval_mass: FracPayload;
  level: string;
}

export interface MetricPmfPayload {
  metric: string;
  model: string;
  obs: number[];
  p: number;
  n: number;
  prior_tp: string[];
  prior_tn: string[];
  benefits?: string[];
  entries: MetricEntryPayload[];
  undefined: { mass: FracPayload; count: number };
  map: ValuePayload | null;
  summary: MetricSummaryPayload | null;
  histogram?: {
    bins: number;
    low: number | null;
    high: number | null;
    masses: FracPayload[];
    counts: number[];
  };
}

export interface ContourLinePayload {
  branch: number;
  points: [number | null, number | null][];
}

export interface ContourItemPayload {
  level: ValuePayload;
  display: number | null;
  lines: ContourLinePayload[];
}

export interface ContoursPayload {
  metric: string;
  p: number | null;
  n: number | null;
  benefits: string[] | null;
  window: [number, number, number, number];
  steps: number;
  contours: ContourItemPayload[];
}

export interface MetricInfoPayload {
  id: string;
  label: string;
  value_class: string;
  prevalence_dependent: boolean;
  signed_levels: boolean;
  display_low: number | null;
  display_high: number | null;
  has_contour: boolean;
}

export interface MetricsListPayload {
  metrics: MetricInfoPayload[];
}

export interface ProjectPointPayload {
  matrix: number[];
  xyz: [number, number, number];
}

export interface ProjectPayload {
  kind: string;
  mode: string;
  p: number | null;
  n: number | null;
  points: ProjectPointPayload[];
}

export interface ServiceErrorBody {
  error: { code: string; message: string };
}
