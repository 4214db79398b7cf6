// Pure list-editing operations behind the drag-and-drop program editor.
// Steps reference micro-instructions or other programs by name; validation
// is the service's job and its diagnostics are surfaced verbatim.

export function insertStep(steps: string[], item: string, index: number): string[] {
  const at = Math.min(Math.max(index, 0), steps.length);
  return [...steps.slice(0, at), item, ...steps.slice(at)];
}

export function moveStep(steps: string[], from: number, to: number): string[] {
  if (from < 0 || from >= steps.length) return steps.slice();
  const out = steps.slice();
  const [item] = out.splice(from, 1);
  const at = Math.min(Math.max(to, 0), out.length);
  out.splice(at, 0, item);
  return out;
}

export function removeStep(steps: string[], index: number): string[] {
  return steps.filter((_, i) => i !== index);
}

export function knownItems(
  instructionNames: string[],
  programNames: string[],
): Set<string> {
  return new Set([...instructionNames, ...programNames]);
}
