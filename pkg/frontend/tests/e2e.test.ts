/** End-to-end against the real service (spawned in globalSetup): the
 * studio's store drives the HTTP API exactly as the browser would. */

import { beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { StudioStore } from "../src/store.js";
import { SERVICE_URL } from "./serviceUrl.js";

function makeStore(): StudioStore {
  // debounce 0 so tests can await evaluateNow directly
  return new StudioStore(new ApiClient(SERVICE_URL), "three_sisters", "female_30", {
    debounceMs: 0,
  });
}

describe("guesswork studio end to end", () => {
  let store: StudioStore;

  beforeEach(async () => {
    store = makeStore();
    await store.load();
  });

  it("loads the food table grouped into real groups", () => {
    const state = store.getState();
    expect(state.foods.map((f) => f.id).sort()).toEqual(["beans", "corn", "squash"]);
    expect(new Set(state.foods.map((f) => f.group))).toEqual(
      new Set(["nuts_beans_seeds_oils", "fruits_vegetables", "starchy_staples"]),
    );
    expect(state.requirements?.energy_kcal).toBe(2330);
  });

  it("entering the solved quantities shows an all-adequate dashboard at $2.48", async () => {
    store.setServings("corn", 4.82);
    store.setServings("beans", 1.14);
    store.setServings("squash", 0.94);
    await store.evaluateNow();
    const report = store.getState().report!;
    expect(report.fully_adequate).toBe(true);
    expect(report.cost).toBeCloseTo(2.48, 2);
    for (const row of report.nutrients) {
      expect(row.band).not.toMatch(/deficient|excess/);
    }
    expect(Math.abs(report.energy.percent - 100)).toBeLessThanOrEqual(0.5);
  });

  it("an empty guess scores all-deficient", async () => {
    await store.evaluateNow();
    const report = store.getState().report!;
    expect(report.fully_adequate).toBe(false);
    expect(report.cost).toBe(0);
    for (const row of report.nutrients) {
      if (row.percent_of_lower !== null) {
        expect(row.band).toBe("deficient-severe");
      }
    }
  });

  it("Solve from an empty guess adopts exactly the plan the API returns", async () => {
    const solved = await store.reveal();
    expect(solved).not.toBeNull();
    const direct = await new ApiClient(SERVICE_URL).solve("three_sisters", "female_30");
    expect(solved!.plan).toEqual(direct.plan);
    const state = store.getState();
    for (const [id, qty] of Object.entries(direct.plan)) {
      expect(state.servings[id]).toBe(qty);
    }
    expect(solved!.cost).toBeCloseTo(2.48, 2);
    expect(state.report!.fully_adequate).toBe(true);
    const bindingNutrients = solved!.binding.map((b) => `${b.nutrient}:${b.kind}`).sort();
    expect(bindingNutrients).toEqual(["energy:equality", "iron:lower", "vitamin_a:lower"]);
  });

  it("doubling the squash price leaves squash at 0.94 servings in the re-solve", async () => {
    const result = await store.applyWhatIf({ squash: 1.02 });
    expect(result).not.toBeNull();
    expect(result!.after.plan["squash"]).toBeCloseTo(0.94, 2);
    expect(result!.after.plan["squash"]).toBeCloseTo(result!.before.plan["squash"]!, 6);
    expect(result!.costChange).toBeGreaterThan(0);
    expect(result!.entering).toEqual([]);
    expect(result!.leaving).toEqual([]);
  });

  it("infeasible requirements surface as an error, not a crash", async () => {
    const bad = new StudioStore(new ApiClient(SERVICE_URL), "three_sisters", "male_30", {
      debounceMs: 0,
    });
    await bad.load();
    const solved = await bad.reveal();
    expect(solved).toBeNull();
    expect(bad.getState().error).toMatch(/fiber/);
  });

  it("renders the region view from service geometry", async () => {
    await store.loadRegion(["beans", "squash"]);
    const region = store.getState().region!;
    expect(region.empty).toBe(false);
    expect(region.vertices.length).toBeGreaterThanOrEqual(3);
    expect(region.optimum).not.toBeNull();
  });

  it("sessions round-trip through the engine's JSON shape", async () => {
    store.setServings("beans", 6.3);
    store.setServings("squash", 0.94);
    const text = store.exportSession();
    const fresh = makeStore();
    await fresh.load();
    fresh.importSession(text);
    expect(fresh.plan()).toEqual({ beans: 6.3, squash: 0.94 });
  });
});
