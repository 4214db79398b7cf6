// Local persistence for composed programs, so an edited panel survives a
// page reload. Sessions themselves are not persisted; they are recreated
// from the stored program JSON on demand.

import type { ProgramDoc } from "./api";

export interface KeyValueStore {
  getItem(key: string): string | null;
  setItem(key: string, value: string): void;
}

const KEY = "spinqc-programs";

export function savePrograms(store: KeyValueStore, programs: ProgramDoc[]): void {
  store.setItem(KEY, JSON.stringify(programs));
}

export function loadPrograms(store: KeyValueStore): ProgramDoc[] {
  const raw = store.getItem(KEY);
  if (!raw) return [];
  try {
    const parsed = JSON.parse(raw);
    if (!Array.isArray(parsed)) return [];
    return parsed.filter(
      (p) => p && typeof p.name === "string" && Array.isArray(p.steps),
    );
  } catch {
    return [];
  }
}

export function upsertProgram(
  store: KeyValueStore,
  program: ProgramDoc,
): ProgramDoc[] {
  const programs = loadPrograms(store);
  const index = programs.findIndex((p) => p.name === program.name);
  if (index >= 0) programs[index] = program;
  else programs.push(program);
  savePrograms(store, programs);
  return programs;
}
