/** Guess-session files: the same versioned JSON the Python side writes,
 * so sessions saved in either place load in the other. */

export interface Session {
  v: 1;
  plan: Record<string, number>;
  dataset: string | null;
  requirements: string | null;
}

export function exportSession(
  plan: Record<string, number>,
  dataset: string | null,
  requirements: string | null,
): string {
  const ordered: Record<string, number> = {};
  for (const key of Object.keys(plan).sort()) {
    const qty = plan[key];
    if (qty !== undefined) ordered[key] = qty;
  }
  // insertion order below is alphabetical, matching the Python writer
  const payload = { dataset, plan: ordered, requirements, v: 1 as const };
  return JSON.stringify(payload, null, 2) + "\n";
}

export function importSession(text: string): Session {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    throw new Error("not valid JSON");
  }
  if (typeof raw !== "object" || raw === null) {
    throw new Error("session must be a JSON object");
  }
  const doc = raw as Record<string, unknown>;
  if (doc.v !== 1) {
    throw new Error('expected a session with "v": 1');
  }
  const planRaw = doc.plan ?? {};
  if (typeof planRaw !== "object" || planRaw === null || Array.isArray(planRaw)) {
    throw new Error("plan must be an object of id -> servings");
  }
  const plan: Record<string, number> = {};
  for (const [id, qty] of Object.entries(planRaw as Record<string, unknown>)) {
    if (typeof qty !== "number" || !Number.isFinite(qty) || qty < 0) {
      throw new Error(`bad servings for ${id}`);
    }
    plan[id] = qty;
  }
  return {
    v: 1,
    plan,
    dataset: typeof doc.dataset === "string" ? doc.dataset : null,
    requirements: typeof doc.requirements === "string" ? doc.requirements : null,
  };
}
