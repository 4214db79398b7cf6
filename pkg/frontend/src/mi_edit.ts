// Micro-instruction editor model: flat numeric rows for every parameter, in
// the units the files use (durations as tau/2pi, frequencies relative to the
// reference). Parsing rejects non-numeric input before anything reaches the
// service; full validation happens server-side on session creation.

import type { FieldDoc, MiDoc } from "./api";

export interface ParamRow {
  label: string;
  path: ["tau"] | ["J", number] | ["field", number, keyof FieldDoc & string];
  value: number;
}

export function miToRows(mi: MiDoc): ParamRow[] {
  const rows: ParamRow[] = [{ label: "tau/2pi", path: ["tau"], value: mi.tau_over_2pi }];
  mi.J.forEach((c, i) => {
    rows.push({
      label: `J(${c.j},${c.k},${c.axis})`,
      path: ["J", i],
      value: c.value,
    });
  });
  mi.fields.forEach((f, i) => {
    for (const key of ["h0", "h1", "f", "phi"] as const) {
      rows.push({
        label: `${key}(${f.qubit},${f.axis})`,
        path: ["field", i, key],
        value: f[key],
      });
    }
  });
  return rows;
}

export function parseNumeric(text: string): number | null {
  const trimmed = text.trim();
  if (trimmed === "") return null;
  const value = Number(trimmed);
  return Number.isFinite(value) ? value : null;
}

export function applyRow(mi: MiDoc, row: ParamRow, value: number): MiDoc {
  const out: MiDoc = JSON.parse(JSON.stringify(mi));
  if (row.path[0] === "tau") {
    out.tau_over_2pi = value;
  } else if (row.path[0] === "J") {
    out.J[row.path[1]].value = value;
  } else {
    const [, index, key] = row.path;
    (out.fields[index] as unknown as Record<string, number>)[key] = value;
  }
  return out;
}

// Reversing the sign of the driving amplitude defines the inverse rotation:
// h1 for sinusoidally driven instructions, h0 for purely static ones.
export function invertDrive(mi: MiDoc): MiDoc {
  const out: MiDoc = JSON.parse(JSON.stringify(mi));
  const driven = out.fields.some((f) => f.h1 !== 0);
  for (const f of out.fields) {
    if (driven && f.h1 !== 0) f.h1 = -f.h1;
    else if (!driven && f.h0 !== 0 && f.axis !== "z") f.h0 = -f.h0;
  }
  return out;
}
