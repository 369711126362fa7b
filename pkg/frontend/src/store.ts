/** Studio state machine. Holds the guess, the latest adequacy report,
 * the revealed solution, what-if results and the region view; every
 * mutation notifies subscribers. Evaluate calls are debounced (150 ms by
 * default) on top of the client's latest-wins cancellation, so dragging
 * a stepper fires at most one request per pause. */

import {
  ApiClient,
  InfeasibleError,
  type AdequacyReport,
  type Food,
  type RegionGeometry,
  type RequirementSetInfo,
  type SolvedDiet,
} from "./api.js";
import { exportSession, importSession } from "./session.js";

export interface WhatIfResult {
  overrides: Record<string, number>;
  before: SolvedDiet;
  after: SolvedDiet;
  entering: string[];
  leaving: string[];
  costChange: number;
}

export interface StudioState {
  datasetId: string;
  reqsId: string;
  foods: Food[];
  requirements: RequirementSetInfo | null;
  servings: Record<string, number>;
  report: AdequacyReport | null;
  solved: SolvedDiet | null;
  whatif: WhatIfResult | null;
  region: RegionGeometry | null;
  error: string | null;
  pendingEvaluations: number;
}

type Listener = (state: StudioState) => void;

const SUPPORT_EPS = 1e-6;

export class StudioStore {
  private state: StudioState;
  private listeners: Listener[] = [];
  private debounceHandle: ReturnType<typeof setTimeout> | null = null;
  private readonly debounceMs: number;

  constructor(
    private api: ApiClient,
    datasetId: string,
    reqsId: string,
    options: { debounceMs?: number } = {},
  ) {
    this.debounceMs = options.debounceMs ?? 150;
    this.state = {
      datasetId,
      reqsId,
      foods: [],
      requirements: null,
      servings: {},
      report: null,
      solved: null,
      whatif: null,
      region: null,
      error: null,
      pendingEvaluations: 0,
    };
  }

  getState(): StudioState {
    return this.state;
  }

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  private update(patch: Partial<StudioState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  async load(): Promise<void> {
    const [foods, requirements] = await Promise.all([
      this.api.foods(this.state.datasetId),
      this.api.requirements(this.state.reqsId),
    ]);
    this.update({ foods, requirements });
    await this.evaluateNow();
  }

  /** The current guess with zero rows dropped. */
  plan(): Record<string, number> {
    const plan: Record<string, number> = {};
    for (const [id, qty] of Object.entries(this.state.servings)) {
      if (qty > 0) plan[id] = qty;
    }
    return plan;
  }

  setServings(foodId: string, qty: number): void {
    const clean = Number.isFinite(qty) && qty > 0 ? qty : 0;
    this.update({
      servings: { ...this.state.servings, [foodId]: clean },
      solved: null, // editing the guess retires the reveal overlay
    });
    this.scheduleEvaluate();
  }

  clearGuess(): void {
    this.update({ servings: {}, solved: null });
    this.scheduleEvaluate();
  }

  private scheduleEvaluate(): void {
    if (this.debounceHandle !== null) clearTimeout(this.debounceHandle);
    this.debounceHandle = setTimeout(() => {
      this.debounceHandle = null;
      void this.evaluateNow();
    }, this.debounceMs);
  }

  /** Immediate evaluation; supersedes any debounced one still queued
   * (same plan, so it would be redundant). Stale responses are dropped
   * by the client's latest-wins cancellation. */
  async evaluateNow(): Promise<void> {
    if (this.debounceHandle !== null) {
      clearTimeout(this.debounceHandle);
      this.debounceHandle = null;
    }
    this.update({ pendingEvaluations: this.state.pendingEvaluations + 1 });
    try {
      const report = await this.api.evaluate(
        this.state.datasetId,
        this.state.reqsId,
        this.plan(),
      );
      if (report !== null) {
        this.update({ report, error: null });
      }
    } catch (err) {
      this.update({ error: String(err) });
    } finally {
      this.update({ pendingEvaluations: this.state.pendingEvaluations - 1 });
    }
  }

  /** Solve-reveal: fetch the optimum and adopt it as the current guess. */
  async reveal(): Promise<SolvedDiet | null> {
    try {
      const solved = await this.api.solve(this.state.datasetId, this.state.reqsId);
      const servings: Record<string, number> = {};
      for (const food of this.state.foods) {
        servings[food.id] = solved.plan[food.id] ?? 0;
      }
      this.update({ solved, servings, error: null });
      await this.evaluateNow();
      return solved;
    } catch (err) {
      if (err instanceof InfeasibleError) {
        this.update({ error: err.message, solved: null });
        return null;
      }
      throw err;
    }
  }

  /** What-if: re-solve under overridden prices and diff the optima. */
  async applyWhatIf(overrides: Record<string, number>): Promise<WhatIfResult | null> {
    try {
      const [before, after] = await Promise.all([
        this.api.solve(this.state.datasetId, this.state.reqsId),
        this.api.solve(this.state.datasetId, this.state.reqsId, overrides),
      ]);
      const supportBefore = new Set(
        Object.entries(before.plan)
          .filter(([, q]) => q > SUPPORT_EPS)
          .map(([id]) => id),
      );
      const supportAfter = new Set(
        Object.entries(after.plan)
          .filter(([, q]) => q > SUPPORT_EPS)
          .map(([id]) => id),
      );
      const result: WhatIfResult = {
        overrides,
        before,
        after,
        entering: [...supportAfter].filter((id) => !supportBefore.has(id)).sort(),
        leaving: [...supportBefore].filter((id) => !supportAfter.has(id)).sort(),
        costChange: after.cost - before.cost,
      };
      this.update({ whatif: result, error: null });
      return result;
    } catch (err) {
      if (err instanceof InfeasibleError) {
        this.update({ error: err.message });
        return null;
      }
      throw err;
    }
  }

  /** Without a filler the energy floor empties any two-food slice, so
   * the plain view shows the micronutrient bounds only; with a filler
   * projected in, the shifted energy line joins the picture. */
  async loadRegion(
    axes: [string, string],
    filler?: { id: string; servings: number },
  ): Promise<void> {
    const region = await this.api.region(
      this.state.datasetId,
      this.state.reqsId,
      axes,
      filler,
      filler !== undefined,
    );
    this.update({ region });
  }

  exportSession(): string {
    return exportSession(this.plan(), this.state.datasetId, this.state.reqsId);
  }

  importSession(text: string): void {
    const session = importSession(text);
    this.update({ servings: { ...session.plan }, solved: null });
    this.scheduleEvaluate();
  }
}
