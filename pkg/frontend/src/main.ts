// Bootstrap: load the catalog, render the palette and a first panel, and
// wire palette drags, panel creation, and the instruction editor dialog.

import { ApiClient, type MiDoc, type ProgramDoc, type SetDoc } from "./api";
import { MiEditor } from "./mi_editor";
import { ExecutionPanel } from "./panel";
import { knownItems } from "./program_edit";
import { loadPrograms, upsertProgram } from "./storage";

interface AppState {
  api: ApiClient;
  sets: SetDoc[];
  programs: ProgramDoc[];
  activeSet: SetDoc;
  clock: string;
  panels: ExecutionPanel[];
}

function renderPalette(state: AppState, host: HTMLElement): void {
  host.textContent = "";
  const heading = document.createElement("h2");
  heading.textContent = `instructions (${state.activeSet.name})`;
  host.append(heading);
  for (const mi of state.activeSet.instructions) {
    const chip = document.createElement("div");
    chip.className = "chip mi";
    chip.textContent = mi.name;
    chip.draggable = true;
    chip.addEventListener("dragstart", (ev) => {
      ev.dataTransfer?.setData("text/plain", mi.name);
    });
    chip.addEventListener("dblclick", () => openMiEditor(state, mi));
    host.append(chip);
  }
  const programsHeading = document.createElement("h2");
  programsHeading.textContent = "programs";
  host.append(programsHeading);
  for (const program of state.programs) {
    const chip = document.createElement("div");
    chip.className = "chip program";
    chip.textContent = program.name;
    chip.draggable = true;
    chip.addEventListener("dragstart", (ev) => {
      ev.dataTransfer?.setData("text/plain", program.name);
    });
    chip.addEventListener("dblclick", () => addPanel(state, program));
    host.append(chip);
  }
}

function openMiEditor(state: AppState, mi: MiDoc): void {
  const overlay = document.createElement("div");
  overlay.className = "overlay";
  const editor = new MiEditor({
    mi,
    onSave: (edited) => {
      const instructions = state.activeSet.instructions.map((entry) =>
        entry.name === edited.name ? edited : entry,
      );
      state.activeSet = { ...state.activeSet, instructions };
      overlay.remove();
      renderApp(state);
    },
  });
  const close = document.createElement("button");
  close.textContent = "close";
  close.addEventListener("click", () => overlay.remove());
  overlay.append(editor.root, close);
  document.body.append(overlay);
}

function addPanel(state: AppState, program: ProgramDoc): void {
  const panel = new ExecutionPanel({
    api: state.api,
    set: state.activeSet,
    program,
    clock: state.clock,
    knownItems: knownItems(
      state.activeSet.instructions.map((mi) => mi.name),
      state.programs.map((p) => p.name),
    ),
    // edits survive a reload: the composed program JSON lands in localStorage
    onProgramChange: (doc) => upsertProgram(window.localStorage, doc),
  });
  state.panels.push(panel);
  const host = document.getElementById("panels");
  host?.append(panel.root);
}

function renderApp(state: AppState): void {
  const app = document.getElementById("app");
  if (!app) return;
  app.textContent = "";

  const toolbar = document.createElement("div");
  toolbar.className = "toolbar";
  const setSelect = document.createElement("select");
  for (const s of state.sets) {
    const option = document.createElement("option");
    option.value = s.name;
    option.textContent = s.name;
    option.selected = s.name === state.activeSet.name;
    setSelect.append(option);
  }
  setSelect.addEventListener("change", () => {
    const found = state.sets.find((s) => s.name === setSelect.value);
    if (found) {
      state.activeSet = found;
      renderApp(state);
    }
  });
  const clockSelect = document.createElement("select");
  for (const mode of ["global", "per_instruction"]) {
    const option = document.createElement("option");
    option.value = mode;
    option.textContent = `clock: ${mode}`;
    option.selected = mode === state.clock;
    clockSelect.append(option);
  }
  clockSelect.addEventListener("change", () => {
    state.clock = clockSelect.value;
  });
  const newPanel = document.createElement("button");
  newPanel.textContent = "new program";
  newPanel.addEventListener("click", () =>
    addPanel(state, { name: `program-${state.panels.length + 1}`, steps: ["Initialize"] }),
  );
  toolbar.append(setSelect, clockSelect, newPanel);

  const palette = document.createElement("aside");
  palette.id = "palette";
  const panels = document.createElement("main");
  panels.id = "panels";

  app.append(toolbar, palette, panels);
  renderPalette(state, palette);
  state.panels = [];
}

export async function start(base = ""): Promise<void> {
  const api = new ApiClient(base);
  const [setsDoc, programsDoc] = await Promise.all([
    api.listSets(),
    api.listPrograms(),
  ]);
  const state: AppState = {
    api,
    sets: setsDoc.sets,
    programs: programsDoc.programs,
    activeSet: setsDoc.sets[0],
    clock: "global",
    panels: [],
  };
  renderApp(state);
  const saved = loadPrograms(window.localStorage);
  const initial = saved.length
    ? saved
    : state.programs.filter((p) => p.name === "d-j3");
  for (const program of initial) addPanel(state, program);
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  void start();
}
