/** Pure view-model helpers: adequacy rows -> dashboard bar models,
 * band -> color. Positioning math only; all nutrition numbers arrive
 * from the API untouched. */

import type { AdequacyReport, NutrientRow, RequirementSetInfo } from "./api.js";

const WHITE: [number, number, number] = [255, 255, 255];
const RED: [number, number, number] = [165, 15, 21];
const BLUE: [number, number, number] = [49, 130, 189];

function lerp(
  from: [number, number, number],
  to: [number, number, number],
  t: number,
): string {
  const clamped = Math.max(0, Math.min(1, t));
  const channels = from.map((f, i) => Math.round(f + (to[i]! - f) * clamped));
  return `rgb(${channels[0]}, ${channels[1]}, ${channels[2]})`;
}

/** Red when outside a bound, blue inside, white exactly at a bound;
 * intensity is the evaluator's [0, 1] gradient scalar. */
export function bandColor(band: string, intensity: number): string {
  if (band === "at-bound") return "rgb(255, 255, 255)";
  if (band.startsWith("deficient") || band.startsWith("excess")) {
    return lerp(WHITE, RED, intensity);
  }
  return lerp(WHITE, BLUE, intensity);
}

export interface BarModel {
  nutrient: string;
  band: string;
  color: string;
  bold: boolean;
  /** Marker position in [0, 1] across the drawn bar. The bar spans
   * [0, 1.25 * UB] when both bounds exist (so excess is visible),
   * otherwise twice the single bound. */
  markerFrac: number;
  /** Fractions for the LB/UB tick positions on the same scale. */
  lowerFrac: number | null;
  upperFrac: number | null;
  delivered: number;
  percentOfLower: number | null;
  percentOfUpper: number | null;
  unitLabel: string;
}

function fractions(row: NutrientRow): {
  marker: number;
  lower: number | null;
  upper: number | null;
} {
  const pol = row.percent_of_lower;
  const pou = row.percent_of_upper;
  // Recover bar positions from the two percents alone. With both bounds:
  // delivered/LB = pol/100, delivered/UB = pou/100 -> in UB units the
  // lower bound sits at pou/pol and delivered at pou/100.
  if (pol !== null && pou !== null && pol > 0) {
    const span = 1.25; // bar runs to 125% of the upper bound
    return {
      marker: Math.min(1, pou / 100 / span),
      lower: pou / pol / span,
      upper: 1 / span,
    };
  }
  if (pol !== null) {
    // only a floor: bar runs to 200% of it
    return { marker: Math.min(1, pol / 200), lower: 0.5, upper: null };
  }
  if (pou !== null) {
    return { marker: Math.min(1, pou / 200), lower: null, upper: 0.5 };
  }
  return { marker: 0, lower: null, upper: null };
}

export function dashboardModel(
  report: AdequacyReport,
  reqs?: RequirementSetInfo,
): BarModel[] {
  const units = new Map<string, string>();
  if (reqs) {
    for (const bound of reqs.bounds) {
      units.set(bound.nutrient, `${bound.value}`);
    }
  }
  return report.nutrients.map((row) => {
    const { marker, lower, upper } = fractions(row);
    return {
      nutrient: row.nutrient,
      band: row.band,
      color: bandColor(row.band, row.intensity),
      bold: row.band === "at-bound",
      markerFrac: marker,
      lowerFrac: lower,
      upperFrac: upper,
      delivered: row.delivered,
      percentOfLower: row.percent_of_lower,
      percentOfUpper: row.percent_of_upper,
      unitLabel: units.get(row.nutrient) ?? "",
    };
  });
}

export interface EnergyGauge {
  percent: number;
  delivered: number;
  target: number;
  color: string;
  onTarget: boolean;
}

export function energyGauge(report: AdequacyReport): EnergyGauge {
  const pct = report.energy.percent;
  const onTarget = Math.abs(pct - 100) <= 0.5;
  const intensity = Math.min(1, Math.abs(pct - 100) / 100);
  return {
    percent: pct,
    delivered: report.energy.delivered,
    target: report.energy.target,
    color: onTarget ? "rgb(255, 255, 255)" : lerp(WHITE, RED, intensity),
    onTarget,
  };
}

export function formatServings(qty: number): string {
  return qty.toFixed(2);
}

export function formatMoney(amount: number): string {
  return `$${amount.toFixed(2)}`;
}
