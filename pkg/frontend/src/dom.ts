/** Thin DOM layer: renders the store's state and forwards user intent
 * back into it. All figures shown are lifted verbatim from API-backed
 * state; this file only formats and positions them. */

import type { Food, RegionGeometry, SolvedDiet } from "./api.js";
import type { StudioStore, StudioState } from "./store.js";
import {
  dashboardModel,
  energyGauge,
  formatMoney,
  formatServings,
} from "./view.js";

const GROUP_LABELS: Record<string, string> = {
  starchy_staples: "Starchy staples",
  fruits_vegetables: "Fruits & vegetables",
  nuts_beans_seeds_oils: "Nuts, beans, seeds & oils",
  animal_source: "Animal-source foods & alternatives",
  milk_beverages: "Milk & nutrient-dense beverages",
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function mountStudio(root: HTMLElement, store: StudioStore): void {
  root.innerHTML = "";
  const guessPanel = el("section", "panel guess-panel");
  const dashboard = el("section", "panel dashboard");
  const solvePanel = el("section", "panel solve-panel");
  const whatifPanel = el("section", "panel whatif-panel");
  const regionPanel = el("section", "panel region-panel");
  root.append(guessPanel, dashboard, solvePanel, whatifPanel, regionPanel);

  store.subscribe((state) => {
    renderGuessPanel(guessPanel, store, state);
    renderDashboard(dashboard, state);
    renderSolvePanel(solvePanel, store, state);
    renderWhatIf(whatifPanel, store, state);
    renderRegion(regionPanel, store, state);
  });
}

function renderGuessPanel(
  host: HTMLElement,
  store: StudioStore,
  state: StudioState,
): void {
  host.innerHTML = "";
  host.append(el("h2", undefined, "Build a diet"));
  const cost = state.report ? formatMoney(state.report.cost) : "—";
  const costLine = el("div", "total-cost", `Daily cost: ${cost}`);
  costLine.dataset["cost"] = state.report ? String(state.report.cost) : "";
  host.append(costLine);

  const byGroup = new Map<string, Food[]>();
  for (const food of state.foods) {
    const bucket = byGroup.get(food.group) ?? [];
    bucket.push(food);
    byGroup.set(food.group, bucket);
  }
  for (const [group, foods] of byGroup) {
    host.append(el("h3", "group", GROUP_LABELS[group] ?? group));
    const table = el("table", "food-table");
    for (const food of foods) {
      const row = el("tr");
      row.append(
        el("td", "food-name", `${food.name} (${formatMoney(food.price_per_serving)}/serving)`),
      );
      const cell = el("td", "stepper");
      const minus = el("button", undefined, "−");
      const input = el("input") as HTMLInputElement;
      input.type = "number";
      input.min = "0";
      input.step = "0.25";
      input.value = String(state.servings[food.id] ?? 0);
      input.dataset["food"] = food.id;
      const plus = el("button", undefined, "+");
      minus.onclick = () => store.setServings(food.id, Number(input.value) - 0.25);
      plus.onclick = () => store.setServings(food.id, Number(input.value) + 0.25);
      input.oninput = () => store.setServings(food.id, Number(input.value));
      cell.append(minus, input, plus);
      row.append(cell);
      table.append(row);
    }
    host.append(table);
  }

  const actions = el("div", "session-actions");
  const exportBtn = el("button", undefined, "Export session");
  exportBtn.onclick = () => {
    const blob = new Blob([store.exportSession()], { type: "application/json" });
    const link = el("a") as HTMLAnchorElement;
    link.href = URL.createObjectURL(blob);
    link.download = "diet-session.json";
    link.click();
    URL.revokeObjectURL(link.href);
  };
  const importInput = el("input") as HTMLInputElement;
  importInput.type = "file";
  importInput.accept = "application/json";
  importInput.onchange = async () => {
    const file = importInput.files?.[0];
    if (file) store.importSession(await file.text());
  };
  const clearBtn = el("button", undefined, "Clear");
  clearBtn.onclick = () => store.clearGuess();
  actions.append(exportBtn, importInput, clearBtn);
  host.append(actions);
  if (state.error) host.append(el("div", "error", state.error));
}

function renderDashboard(host: HTMLElement, state: StudioState): void {
  host.innerHTML = "";
  host.append(el("h2", undefined, "Nutrient adequacy"));
  if (!state.report) return;

  const gauge = energyGauge(state.report);
  const energyRow = el("div", "energy-gauge");
  energyRow.style.background = gauge.color;
  energyRow.textContent =
    `Energy: ${gauge.delivered.toFixed(0)} / ${gauge.target.toFixed(0)} kcal` +
    ` (${gauge.percent.toFixed(1)}%)`;
  if (gauge.onTarget) energyRow.classList.add("at-bound");
  host.append(energyRow);

  const adequacy = el(
    "div",
    "verdict",
    state.report.fully_adequate ? "Fully adequate ✓" : "Not yet adequate",
  );
  adequacy.dataset["adequate"] = String(state.report.fully_adequate);
  host.append(adequacy);

  for (const bar of dashboardModel(state.report, state.requirements ?? undefined)) {
    const row = el("div", "bar-row");
    const label = el("span", "bar-label", bar.nutrient);
    if (bar.bold) label.style.fontWeight = "bold";
    const track = el("div", "bar-track");
    track.title = `${bar.nutrient}: ${bar.delivered.toFixed(1)} — ${bar.band}`;
    const fill = el("div", "bar-fill");
    fill.style.width = `${(bar.markerFrac * 100).toFixed(1)}%`;
    fill.style.background = bar.color;
    track.append(fill);
    for (const [frac, cls] of [
      [bar.lowerFrac, "tick-lower"],
      [bar.upperFrac, "tick-upper"],
    ] as const) {
      if (frac !== null) {
        const tick = el("div", `tick ${cls}`);
        tick.style.left = `${(frac * 100).toFixed(1)}%`;
        track.append(tick);
      }
    }
    const pct = el("span", "bar-pct");
    const pieces: string[] = [];
    if (bar.percentOfLower !== null) pieces.push(`${bar.percentOfLower.toFixed(0)}% of floor`);
    if (bar.percentOfUpper !== null) pieces.push(`${bar.percentOfUpper.toFixed(0)}% of ceiling`);
    pct.textContent = pieces.join(", ");
    row.append(label, track, pct);
    host.append(row);
  }
}

function renderSolvePanel(
  host: HTMLElement,
  store: StudioStore,
  state: StudioState,
): void {
  host.innerHTML = "";
  host.append(el("h2", undefined, "Reveal the least-cost diet"));
  const solveBtn = el("button", "solve-button", "Solve");
  solveBtn.onclick = () => void store.reveal();
  host.append(solveBtn);
  if (!state.solved) return;
  const solved: SolvedDiet = state.solved;
  host.append(
    el("div", "solved-cost reveal-animate", `Optimal cost: ${formatMoney(solved.cost)}`),
  );
  const list = el("table", "solved-plan");
  for (const [id, qty] of Object.entries(solved.plan).sort()) {
    const row = el("tr", "reveal-animate");
    row.append(el("td", undefined, id), el("td", undefined, formatServings(qty)));
    list.append(row);
  }
  host.append(list);
  host.append(el("h3", undefined, "Binding constraints (shadow prices)"));
  const bindings = el("ul", "binding-list");
  for (const b of solved.binding) {
    bindings.append(
      el(
        "li",
        undefined,
        `${b.nutrient} ${b.kind} at ${b.bound}: ${b.shadow_price >= 0 ? "+" : ""}${b.shadow_price.toFixed(5)} per unit`,
      ),
    );
  }
  host.append(bindings);
}

function renderWhatIf(
  host: HTMLElement,
  store: StudioStore,
  state: StudioState,
): void {
  host.innerHTML = "";
  host.append(el("h2", undefined, "What if prices change?"));
  const sliders = el("div", "price-sliders");
  const pending: Record<string, number> = { ...(state.whatif?.overrides ?? {}) };
  for (const food of state.foods) {
    const row = el("div", "slider-row");
    const base = food.price_per_serving;
    const current = pending[food.id] ?? base;
    const label = el(
      "span",
      "slider-label",
      `${food.id}: ${formatMoney(current)}`,
    );
    const slider = el("input") as HTMLInputElement;
    slider.type = "range";
    slider.min = String(base * 0.25);
    slider.max = String(base * 3);
    slider.step = String(base / 100);
    slider.value = String(current);
    slider.dataset["food"] = food.id;
    slider.oninput = () => {
      label.textContent = `${food.id}: ${formatMoney(Number(slider.value))}`;
    };
    // re-solve on release, not on every drag tick
    slider.onchange = () => {
      pending[food.id] = Number(slider.value);
      void store.applyWhatIf({ ...pending });
    };
    row.append(label, slider);
    sliders.append(row);
  }
  host.append(sliders);
  if (state.whatif) {
    const diff = el("div", "whatif-diff");
    diff.append(
      el(
        "div",
        undefined,
        `Cost: ${formatMoney(state.whatif.before.cost)} → ${formatMoney(state.whatif.after.cost)}` +
          ` (${state.whatif.costChange >= 0 ? "+" : ""}${state.whatif.costChange.toFixed(2)})`,
      ),
    );
    diff.append(
      el("div", undefined, `Entering: ${state.whatif.entering.join(", ") || "—"}`),
    );
    diff.append(
      el("div", undefined, `Leaving: ${state.whatif.leaving.join(", ") || "—"}`),
    );
    host.append(diff);
  }
}

function renderRegion(
  host: HTMLElement,
  store: StudioStore,
  state: StudioState,
): void {
  host.innerHTML = "";
  host.append(el("h2", undefined, "Two-food feasible region"));
  const picker = el("div", "region-picker");
  const selX = el("select") as HTMLSelectElement;
  const selY = el("select") as HTMLSelectElement;
  for (const food of state.foods) {
    selX.append(new Option(food.id, food.id));
    selY.append(new Option(food.id, food.id));
  }
  if (state.foods.length > 1) selY.selectedIndex = 1;
  const show = el("button", undefined, "Show region");
  show.onclick = () => void store.loadRegion([selX.value, selY.value]);
  picker.append(selX, selY, show);
  host.append(picker);
  if (state.region) host.append(regionSvg(state.region));
}

function regionSvg(geometry: RegionGeometry): SVGSVGElement {
  const [xmin, xmax, ymin, ymax] = geometry.window;
  const W = 420;
  const H = 320;
  const px = (x: number) => ((x - xmin) / (xmax - xmin)) * (W - 40) + 30;
  const py = (y: number) => H - 25 - ((y - ymin) / (ymax - ymin)) * (H - 45);
  const svg = document.createElementNS("http://www.w3.org/2000/svg", "svg");
  svg.setAttribute("viewBox", `0 0 ${W} ${H}`);
  svg.setAttribute("class", "region-svg");
  if (geometry.empty) {
    const text = document.createElementNS(svg.namespaceURI, "text") as SVGTextElement;
    text.setAttribute("x", String(W / 2));
    text.setAttribute("y", String(H / 2));
    text.setAttribute("text-anchor", "middle");
    text.textContent = "infeasible";
    svg.append(text);
    return svg;
  }
  if (geometry.vertices.length >= 3) {
    const polygon = document.createElementNS(svg.namespaceURI, "polygon") as SVGPolygonElement;
    polygon.setAttribute(
      "points",
      geometry.vertices.map(([x, y]) => `${px(x)},${py(y)}`).join(" "),
    );
    polygon.setAttribute("fill", "rgba(158, 202, 225, 0.5)");
    polygon.setAttribute("stroke", "rgb(49, 130, 189)");
    svg.append(polygon);
  }
  for (const line of geometry.costlines) {
    const [[x1, y1], [x2, y2]] = line.segment;
    const seg = document.createElementNS(svg.namespaceURI, "line") as SVGLineElement;
    seg.setAttribute("x1", String(px(x1)));
    seg.setAttribute("y1", String(py(y1)));
    seg.setAttribute("x2", String(px(x2)));
    seg.setAttribute("y2", String(py(y2)));
    seg.setAttribute("stroke", "rgb(230, 85, 13)");
    seg.setAttribute("stroke-dasharray", "5 3");
    svg.append(seg);
  }
  if (geometry.optimum) {
    const [x, y] = geometry.optimum;
    const dot = document.createElementNS(svg.namespaceURI, "circle") as SVGCircleElement;
    dot.setAttribute("cx", String(px(x)));
    dot.setAttribute("cy", String(py(y)));
    dot.setAttribute("r", "5");
    dot.setAttribute("fill", "rgb(230, 85, 13)");
    svg.append(dot);
  }
  return svg;
}
