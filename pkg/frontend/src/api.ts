/** Typed client for the diet service. The UI does no nutrition math of
 * its own: every number it shows originates in one of these responses.
 *
 * Evaluation requests are latest-wins: firing a new one aborts the
 * in-flight request, so a fast typist never sees a stale report. */

export interface NutrientRow {
  nutrient: string;
  delivered: number;
  percent_of_lower: number | null;
  percent_of_upper: number | null;
  band: string;
  intensity: number;
}

export interface AdequacyReport {
  nutrients: NutrientRow[];
  energy: { delivered: number; target: number; percent: number };
  fully_adequate: boolean;
  cost: number;
}

export interface BindingConstraint {
  nutrient: string;
  kind: string;
  bound: number;
  shadow_price: number;
}

export interface SolvedDiet {
  status: "optimal";
  plan: Record<string, number>;
  cost: number;
  nutrients: Record<string, number>;
  binding: BindingConstraint[];
  iterations: number;
  basis: string[];
}

export interface Food {
  id: string;
  name: string;
  group: string;
  price_per_serving: number;
  serving_g: number;
  source_id: string | null;
  composition: Record<string, number>;
}

export interface DatasetListing {
  datasets: { id: string; provenance: string; food_count: number }[];
  requirement_sets: {
    id: string;
    label: string;
    energy_kcal: number;
    nutrient_count: number;
  }[];
}

export interface RequirementBound {
  nutrient: string;
  kind: string;
  value: number;
  provenance: string;
}

export interface RequirementSetInfo {
  id: string;
  label: string;
  energy_kcal: number;
  bounds: RequirementBound[];
}

export interface RegionGeometry {
  vertices: [number, number][];
  edges: { from: number; to: number; label: string }[];
  optimum: [number, number] | null;
  costlines: { cost: number; segment: [[number, number], [number, number]] }[];
  empty: boolean;
  bounded: boolean;
  halfplanes: { a: number; b: number; rel: string; rhs: number; label: string }[];
  window: [number, number, number, number];
}

export class InfeasibleError extends Error {
  constructor(public conflicts: string[]) {
    super(`infeasible: ${conflicts.join("; ")}`);
  }
}

export type FetchLike = (
  url: string,
  init?: RequestInit,
) => Promise<Response>;

export class ApiClient {
  private evaluateAbort: AbortController | null = null;

  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
    signal?: AbortSignal,
  ): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { "Content-Type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
      signal,
    });
    if (response.status === 422) {
      const payload = (await response.json()) as { conflicts?: string[] };
      throw new InfeasibleError(payload.conflicts ?? []);
    }
    if (!response.ok) {
      throw new Error(`${method} ${path} failed: HTTP ${response.status}`);
    }
    return (await response.json()) as T;
  }

  listDatasets(): Promise<DatasetListing> {
    return this.request("GET", "/api/datasets");
  }

  async foods(datasetId: string): Promise<Food[]> {
    const doc = await this.request<{ foods: Food[] }>(
      "GET",
      `/api/datasets/${encodeURIComponent(datasetId)}/foods`,
    );
    return doc.foods;
  }

  requirements(reqsId: string): Promise<RequirementSetInfo> {
    return this.request("GET", `/api/requirements/${encodeURIComponent(reqsId)}`);
  }

  /** Latest-wins: cancels any evaluate still in flight. Returns null when
   * this call itself got superseded before completing. */
  async evaluate(
    dataset: string,
    reqs: string,
    plan: Record<string, number>,
  ): Promise<AdequacyReport | null> {
    this.evaluateAbort?.abort();
    const controller = new AbortController();
    this.evaluateAbort = controller;
    try {
      return await this.request<AdequacyReport>(
        "POST",
        "/api/evaluate",
        { dataset, reqs, plan },
        controller.signal,
      );
    } catch (err) {
      if (controller.signal.aborted) return null;
      throw err;
    } finally {
      if (this.evaluateAbort === controller) this.evaluateAbort = null;
    }
  }

  solve(
    dataset: string,
    reqs: string,
    priceOverrides?: Record<string, number>,
  ): Promise<SolvedDiet> {
    const body: Record<string, unknown> = { dataset, reqs };
    if (priceOverrides && Object.keys(priceOverrides).length > 0) {
      body.price_overrides = priceOverrides;
    }
    return this.request("POST", "/api/solve", body);
  }

  region(
    dataset: string,
    reqs: string,
    axes: [string, string],
    filler?: { id: string; servings: number },
    includeEnergy = true,
  ): Promise<RegionGeometry> {
    return this.request("POST", "/api/region", {
      dataset,
      reqs,
      axes,
      filler: filler ?? null,
      include_energy: includeEnergy,
    });
  }
}
