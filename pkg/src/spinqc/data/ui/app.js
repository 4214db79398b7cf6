// src/api.ts
var ApiError = class extends Error {
  constructor(status, detail) {
    super(detail);
    this.status = status;
  }
};
async function jsonOrThrow(resp) {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (body && body.detail) detail = String(body.detail);
    } catch {
    }
    throw new ApiError(resp.status, detail);
  }
  return await resp.json();
}
var ApiClient = class {
  constructor(base = "") {
    this.base = base;
  }
  listSets() {
    return fetch(`${this.base}/sets`).then((r) => jsonOrThrow(r));
  }
  listPrograms() {
    return fetch(`${this.base}/programs`).then((r) => jsonOrThrow(r));
  }
  createSession(req) {
    return fetch(`${this.base}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req)
    }).then((r) => jsonOrThrow(r));
  }
  control(id, action) {
    return fetch(`${this.base}/sessions/${id}/control`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ action })
    }).then((r) => jsonOrThrow(r));
  }
  snapshot(id, detail = "readouts") {
    return fetch(`${this.base}/sessions/${id}/snapshot?detail=${detail}`).then(
      (r) => jsonOrThrow(r)
    );
  }
  eventsUrl(id, start2 = 0) {
    return `${this.base}/events/${id}?start=${start2}`;
  }
};

// src/mi_edit.ts
function miToRows(mi) {
  const rows = [{ label: "tau/2pi", path: ["tau"], value: mi.tau_over_2pi }];
  mi.J.forEach((c, i) => {
    rows.push({
      label: `J(${c.j},${c.k},${c.axis})`,
      path: ["J", i],
      value: c.value
    });
  });
  mi.fields.forEach((f, i) => {
    for (const key of ["h0", "h1", "f", "phi"]) {
      rows.push({
        label: `${key}(${f.qubit},${f.axis})`,
        path: ["field", i, key],
        value: f[key]
      });
    }
  });
  return rows;
}
function parseNumeric(text) {
  const trimmed = text.trim();
  if (trimmed === "") return null;
  const value = Number(trimmed);
  return Number.isFinite(value) ? value : null;
}
function applyRow(mi, row, value) {
  const out = JSON.parse(JSON.stringify(mi));
  if (row.path[0] === "tau") {
    out.tau_over_2pi = value;
  } else if (row.path[0] === "J") {
    out.J[row.path[1]].value = value;
  } else {
    const [, index, key] = row.path;
    out.fields[index][key] = value;
  }
  return out;
}
function invertDrive(mi) {
  const out = JSON.parse(JSON.stringify(mi));
  const driven = out.fields.some((f) => f.h1 !== 0);
  for (const f of out.fields) {
    if (driven && f.h1 !== 0) f.h1 = -f.h1;
    else if (!driven && f.h0 !== 0 && f.axis !== "z") f.h0 = -f.h0;
  }
  return out;
}

// src/mi_editor.ts
var MiEditor = class {
  constructor(opts) {
    this.opts = opts;
    this.doc = opts.doc ?? document;
    this.mi = JSON.parse(JSON.stringify(opts.mi));
    this.root = this.doc.createElement("form");
    this.root.className = "mi-editor";
    this.render();
  }
  render() {
    this.root.textContent = "";
    const title = this.doc.createElement("h3");
    title.textContent = this.mi.name;
    this.root.append(title);
    for (const row of miToRows(this.mi)) {
      const label = this.doc.createElement("label");
      label.textContent = row.label;
      const input = this.doc.createElement("input");
      input.value = String(row.value);
      input.dataset.param = row.label;
      input.addEventListener("change", () => {
        const value = parseNumeric(input.value);
        if (value === null) {
          input.classList.add("invalid");
          input.value = String(row.value);
          return;
        }
        input.classList.remove("invalid");
        this.mi = applyRow(this.mi, row, value);
        this.render();
      });
      label.append(input);
      this.root.append(label);
    }
    const invert = this.doc.createElement("button");
    invert.type = "button";
    invert.textContent = "invert drive";
    invert.dataset.action = "invert";
    invert.addEventListener("click", () => {
      this.mi = invertDrive(this.mi);
      this.render();
    });
    const save = this.doc.createElement("button");
    save.type = "button";
    save.textContent = "save";
    save.dataset.action = "save";
    save.addEventListener("click", () => this.opts.onSave(this.current()));
    this.root.append(invert, save);
  }
  current() {
    return JSON.parse(JSON.stringify(this.mi));
  }
};

// src/colors.ts
function readoutColor(q) {
  const v = Math.min(1, Math.max(0, q));
  const red = Math.round(255 * v);
  const green = Math.round(255 * (1 - v));
  return `rgb(${red}, ${green}, 0)`;
}
var PURE_GREEN = readoutColor(0);
var PURE_RED = readoutColor(1);
function formatReadout(q) {
  return q.toFixed(3);
}

// src/events.ts
function subscribeEvents(url, onEvent, onClose = () => {
}, factory = (u) => new EventSource(u)) {
  const source = factory(url);
  let closed = false;
  const finish = () => {
    if (!closed) {
      closed = true;
      source.close();
      onClose();
    }
  };
  source.onmessage = (ev) => {
    const event = JSON.parse(ev.data);
    onEvent(event);
    if (event.type !== "step") finish();
  };
  source.onerror = finish;
  return { close: finish };
}

// src/program_edit.ts
function insertStep(steps, item, index) {
  const at = Math.min(Math.max(index, 0), steps.length);
  return [...steps.slice(0, at), item, ...steps.slice(at)];
}
function moveStep(steps, from, to) {
  if (from < 0 || from >= steps.length) return steps.slice();
  const out = steps.slice();
  const [item] = out.splice(from, 1);
  const at = Math.min(Math.max(to, 0), out.length);
  out.splice(at, 0, item);
  return out;
}
function removeStep(steps, index) {
  return steps.filter((_, i) => i !== index);
}
function knownItems(instructionNames, programNames) {
  return /* @__PURE__ */ new Set([...instructionNames, ...programNames]);
}

// src/panel.ts
var AXES = ["x", "y", "z"];
var ExecutionPanel = class {
  constructor(opts) {
    this.opts = opts;
    this.session = null;
    this.readouts = null;
    this.status = "unloaded";
    this.errorText = "";
    this.eventCount = 0;
    this.subscription = null;
    this.showAmplitudes = false;
    this.dragIndex = null;
    this.doc = opts.doc ?? document;
    this.name = opts.program.name;
    this.steps = [...opts.program.steps];
    this.root = this.doc.createElement("section");
    this.root.className = "panel";
    this.render();
  }
  get programDoc() {
    return { name: this.name, steps: [...this.steps] };
  }
  // ---- program editing -------------------------------------------------
  dropNewItem(item, index) {
    if (this.opts.knownItems && !this.opts.knownItems.has(item)) {
      this.errorText = `unknown instruction or program: ${item}`;
      this.render();
      return;
    }
    this.errorText = "";
    this.steps = insertStep(this.steps, item, index);
    this.invalidateSession();
    this.opts.onProgramChange?.(this.programDoc);
    this.render();
  }
  reorder(from, to) {
    this.steps = moveStep(this.steps, from, to);
    this.invalidateSession();
    this.opts.onProgramChange?.(this.programDoc);
    this.render();
  }
  removeAt(index) {
    this.steps = removeStep(this.steps, index);
    this.invalidateSession();
    this.opts.onProgramChange?.(this.programDoc);
    this.render();
  }
  invalidateSession() {
    this.subscription?.close();
    this.subscription = null;
    this.session = null;
    this.readouts = null;
    this.status = "edited";
    this.eventCount = 0;
  }
  // ---- session control ---------------------------------------------------
  async ensureSession() {
    if (this.session) return this.session;
    this.session = await this.opts.api.createSession({
      set: this.opts.set.name,
      program: this.programDoc,
      clock: this.opts.clock
    });
    this.status = this.session.status;
    this.eventCount = 0;
    return this.session;
  }
  async control(action) {
    this.errorText = "";
    try {
      const session = await this.ensureSession();
      this.listen(session.id);
      const result = await this.opts.api.control(session.id, action);
      this.session = result;
      this.status = result.status;
      if (action === "reset") {
        this.eventCount = 0;
        this.subscription?.close();
        this.subscription = null;
      }
      const last = result.new_trace[result.new_trace.length - 1];
      if (last) this.readouts = last.readouts;
      if (action === "reset") {
        const snap = await this.opts.api.snapshot(result.id);
        this.readouts = snap.readouts;
      }
    } catch (err) {
      this.errorText = err instanceof Error ? err.message : String(err);
      this.status = this.session ? this.session.status : "error";
    }
    this.render();
  }
  listen(sessionId) {
    if (this.subscription) return;
    const url = this.opts.api.eventsUrl(sessionId, this.eventCount);
    this.subscription = subscribeEvents(
      url,
      (ev) => this.onEvent(ev),
      () => {
        this.subscription = null;
      },
      this.opts.eventSourceFactory
    );
  }
  onEvent(ev) {
    this.eventCount += 1;
    this.readouts = ev.readouts;
    this.status = ev.status;
    if (this.session) this.session.pc = ev.pc;
    if (ev.message) this.errorText = ev.message;
    this.render();
  }
  async toggleAmplitudes() {
    this.showAmplitudes = !this.showAmplitudes;
    this.render();
    if (this.showAmplitudes && this.session) {
      const snap = await this.opts.api.snapshot(this.session.id, "amplitudes");
      this.renderAmplitudes(snap.amplitudes ?? []);
    }
  }
  // ---- rendering ---------------------------------------------------------
  render() {
    this.root.textContent = "";
    this.root.append(
      this.renderHeader(),
      this.renderSteps(),
      this.renderControls(),
      this.renderReadouts()
    );
    const error = this.doc.createElement("div");
    error.className = "error";
    error.textContent = this.errorText;
    this.root.append(error);
    if (this.showAmplitudes) {
      const holder = this.doc.createElement("div");
      holder.className = "amplitudes";
      holder.textContent = this.session ? "loading..." : "run first";
      this.root.append(holder);
    }
  }
  renderHeader() {
    const header = this.doc.createElement("header");
    const title = this.doc.createElement("span");
    title.className = "title";
    title.textContent = `${this.name} @ ${this.opts.set.name}`;
    const status = this.doc.createElement("span");
    status.className = "status";
    status.dataset.status = this.status;
    status.textContent = this.status;
    header.append(title, status);
    return header;
  }
  renderSteps() {
    const list = this.doc.createElement("ol");
    list.className = "steps";
    let pausedAt = -1;
    if (this.session && this.status === "paused_at_breakpoint") {
      const pc = this.session.pc;
      if (this.session.steps[pc] === this.steps[pc]) pausedAt = pc;
    }
    this.steps.forEach((step, index) => {
      const item = this.doc.createElement("li");
      item.textContent = step;
      item.draggable = true;
      item.dataset.index = String(index);
      if (index === pausedAt) item.classList.add("current");
      item.addEventListener("dragstart", () => {
        this.dragIndex = index;
      });
      item.addEventListener("dragover", (ev) => ev.preventDefault());
      item.addEventListener("drop", (ev) => {
        ev.preventDefault();
        const incoming = ev.dataTransfer?.getData("text/plain");
        if (incoming) this.dropNewItem(incoming, index);
        else if (this.dragIndex !== null) this.reorder(this.dragIndex, index);
        this.dragIndex = null;
      });
      const remove = this.doc.createElement("button");
      remove.className = "remove";
      remove.textContent = "x";
      remove.addEventListener("click", () => this.removeAt(index));
      item.append(remove);
      list.append(item);
    });
    list.addEventListener("dragover", (ev) => ev.preventDefault());
    list.addEventListener("drop", (ev) => {
      ev.preventDefault();
      const incoming = ev.dataTransfer?.getData("text/plain");
      if (incoming) this.dropNewItem(incoming, this.steps.length);
      else if (this.dragIndex !== null) {
        this.reorder(this.dragIndex, this.steps.length);
      }
      this.dragIndex = null;
    });
    return list;
  }
  renderControls() {
    const bar = this.doc.createElement("div");
    bar.className = "controls";
    for (const action of ["run", "step", "reset"]) {
      const button = this.doc.createElement("button");
      button.textContent = action;
      button.dataset.action = action;
      button.addEventListener("click", () => void this.control(action));
      bar.append(button);
    }
    const amp = this.doc.createElement("button");
    amp.textContent = "amplitudes";
    amp.dataset.action = "amplitudes";
    amp.addEventListener("click", () => void this.toggleAmplitudes());
    bar.append(amp);
    return bar;
  }
  renderReadouts() {
    const grid = this.doc.createElement("table");
    grid.className = "qubits";
    const numQubits = this.opts.set.num_qubits;
    const head = this.doc.createElement("tr");
    head.append(this.doc.createElement("th"));
    for (let j = 1; j <= numQubits; j++) {
      const th = this.doc.createElement("th");
      th.textContent = `q${j}`;
      head.append(th);
    }
    grid.append(head);
    for (const axis of AXES) {
      const row = this.doc.createElement("tr");
      const label = this.doc.createElement("th");
      label.textContent = axis;
      row.append(label);
      for (let j = 1; j <= numQubits; j++) {
        const cell = this.doc.createElement("td");
        cell.className = "qcell";
        cell.dataset.axis = axis;
        cell.dataset.qubit = String(j);
        const value = this.readouts?.[j - 1]?.[axis];
        if (value === void 0) {
          cell.classList.add("empty");
        } else {
          cell.style.backgroundColor = readoutColor(value);
          cell.title = formatReadout(value);
        }
        row.append(cell);
      }
      grid.append(row);
    }
    return grid;
  }
  renderAmplitudes(amps) {
    const holder = this.root.querySelector(".amplitudes");
    if (!holder) return;
    holder.textContent = "";
    const table = this.doc.createElement("table");
    for (const a of amps) {
      const row = this.doc.createElement("tr");
      const basis = this.doc.createElement("td");
      basis.textContent = a.basis;
      const re = this.doc.createElement("td");
      re.textContent = a.re.toFixed(6);
      const im = this.doc.createElement("td");
      im.textContent = a.im.toFixed(6);
      row.append(basis, re, im);
      table.append(row);
    }
    holder.append(table);
  }
};

// src/storage.ts
var KEY = "spinqc-programs";
function savePrograms(store, programs) {
  store.setItem(KEY, JSON.stringify(programs));
}
function loadPrograms(store) {
  const raw = store.getItem(KEY);
  if (!raw) return [];
  try {
    const parsed = JSON.parse(raw);
    if (!Array.isArray(parsed)) return [];
    return parsed.filter(
      (p) => p && typeof p.name === "string" && Array.isArray(p.steps)
    );
  } catch {
    return [];
  }
}
function upsertProgram(store, program) {
  const programs = loadPrograms(store);
  const index = programs.findIndex((p) => p.name === program.name);
  if (index >= 0) programs[index] = program;
  else programs.push(program);
  savePrograms(store, programs);
  return programs;
}

// src/main.ts
function renderPalette(state, host) {
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
function openMiEditor(state, mi) {
  const overlay = document.createElement("div");
  overlay.className = "overlay";
  const editor = new MiEditor({
    mi,
    onSave: (edited) => {
      const instructions = state.activeSet.instructions.map(
        (entry) => entry.name === edited.name ? edited : entry
      );
      state.activeSet = { ...state.activeSet, instructions };
      overlay.remove();
      renderApp(state);
    }
  });
  const close = document.createElement("button");
  close.textContent = "close";
  close.addEventListener("click", () => overlay.remove());
  overlay.append(editor.root, close);
  document.body.append(overlay);
}
function addPanel(state, program) {
  const panel = new ExecutionPanel({
    api: state.api,
    set: state.activeSet,
    program,
    clock: state.clock,
    knownItems: knownItems(
      state.activeSet.instructions.map((mi) => mi.name),
      state.programs.map((p) => p.name)
    ),
    // edits survive a reload: the composed program JSON lands in localStorage
    onProgramChange: (doc) => upsertProgram(window.localStorage, doc)
  });
  state.panels.push(panel);
  const host = document.getElementById("panels");
  host?.append(panel.root);
}
function renderApp(state) {
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
  newPanel.addEventListener(
    "click",
    () => addPanel(state, { name: `program-${state.panels.length + 1}`, steps: ["Initialize"] })
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
async function start(base = "") {
  const api = new ApiClient(base);
  const [setsDoc, programsDoc] = await Promise.all([
    api.listSets(),
    api.listPrograms()
  ]);
  const state = {
    api,
    sets: setsDoc.sets,
    programs: programsDoc.programs,
    activeSet: setsDoc.sets[0],
    clock: "global",
    panels: []
  };
  renderApp(state);
  const saved = loadPrograms(window.localStorage);
  const initial = saved.length ? saved : state.programs.filter((p) => p.name === "d-j3");
  for (const program of initial) addPanel(state, program);
}
if (typeof document !== "undefined" && document.getElementById("app")) {
  void start();
}
export {
  start
};
