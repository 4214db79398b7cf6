// One program panel: an editable step list, execution controls, the
// color-coded qubit readout grid, and an optional amplitude inspector.
// Each panel owns at most one service session at a time.

import type {
  ApiClient,
  ProgramDoc,
  Readout,
  SessionHandle,
  SetDoc,
} from "./api";
import { formatReadout, readoutColor } from "./colors";
import { subscribeEvents, type EventSubscription, type SessionEvent } from "./events";
import { insertStep, moveStep, removeStep } from "./program_edit";

const AXES: Array<keyof Readout> = ["x", "y", "z"];

export interface PanelOptions {
  api: ApiClient;
  set: SetDoc;
  program: ProgramDoc;
  clock?: string;
  doc?: Document;
  // names droppable into the program: the set's instructions plus library
  // programs; anything else is rejected at the drop with a diagnostic
  knownItems?: Set<string>;
  eventSourceFactory?: (url: string) => {
    onmessage: ((ev: { data: string }) => void) | null;
    onerror: ((ev: unknown) => void) | null;
    close(): void;
  };
  onProgramChange?: (program: ProgramDoc) => void;
}

export class ExecutionPanel {
  readonly root: HTMLElement;
  steps: string[];
  name: string;
  session: SessionHandle | null = null;
  private readouts: Readout[] | null = null;
  private status = "unloaded";
  private errorText = "";
  private eventCount = 0;
  private subscription: EventSubscription | null = null;
  private showAmplitudes = false;
  private dragIndex: number | null = null;
  private doc: Document;

  constructor(private opts: PanelOptions) {
    this.doc = opts.doc ?? document;
    this.name = opts.program.name;
    this.steps = [...opts.program.steps];
    this.root = this.doc.createElement("section");
    this.root.className = "panel";
    this.render();
  }

  get programDoc(): ProgramDoc {
    return { name: this.name, steps: [...this.steps] };
  }

  // ---- program editing -------------------------------------------------

  dropNewItem(item: string, index: number): void {
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

  reorder(from: number, to: number): void {
    this.steps = moveStep(this.steps, from, to);
    this.invalidateSession();
    this.opts.onProgramChange?.(this.programDoc);
    this.render();
  }

  removeAt(index: number): void {
    this.steps = removeStep(this.steps, index);
    this.invalidateSession();
    this.opts.onProgramChange?.(this.programDoc);
    this.render();
  }

  private invalidateSession(): void {
    this.subscription?.close();
    this.subscription = null;
    this.session = null;
    this.readouts = null;
    this.status = "edited";
    this.eventCount = 0;
  }

  // ---- session control ---------------------------------------------------

  private async ensureSession(): Promise<SessionHandle> {
    if (this.session) return this.session;
    this.session = await this.opts.api.createSession({
      set: this.opts.set.name,
      program: this.programDoc,
      clock: this.opts.clock,
    });
    this.status = this.session.status;
    this.eventCount = 0;
    return this.session;
  }

  async control(action: "run" | "step" | "reset"): Promise<void> {
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

  private listen(sessionId: string): void {
    if (this.subscription) return;
    const url = this.opts.api.eventsUrl(sessionId, this.eventCount);
    this.subscription = subscribeEvents(
      url,
      (ev) => this.onEvent(ev),
      () => {
        this.subscription = null;
      },
      this.opts.eventSourceFactory,
    );
  }

  private onEvent(ev: SessionEvent): void {
    this.eventCount += 1;
    this.readouts = ev.readouts;
    this.status = ev.status;
    if (this.session) this.session.pc = ev.pc;
    if (ev.message) this.errorText = ev.message;
    this.render();
  }

  async toggleAmplitudes(): Promise<void> {
    this.showAmplitudes = !this.showAmplitudes;
    this.render();
    if (this.showAmplitudes && this.session) {
      const snap = await this.opts.api.snapshot(this.session.id, "amplitudes");
      this.renderAmplitudes(snap.amplitudes ?? []);
    }
  }

  // ---- rendering ---------------------------------------------------------

  private render(): void {
    this.root.textContent = "";
    this.root.append(
      this.renderHeader(),
      this.renderSteps(),
      this.renderControls(),
      this.renderReadouts(),
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

  private renderHeader(): HTMLElement {
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

  private renderSteps(): HTMLElement {
    const list = this.doc.createElement("ol");
    list.className = "steps";
    // highlight the next step at a pause; the editor list shows program
    // references, so the pc only maps onto it when the names line up
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
        const incoming = (ev as DragEvent).dataTransfer?.getData("text/plain");
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
      const incoming = (ev as DragEvent).dataTransfer?.getData("text/plain");
      if (incoming) this.dropNewItem(incoming, this.steps.length);
      else if (this.dragIndex !== null) {
        this.reorder(this.dragIndex, this.steps.length);
      }
      this.dragIndex = null;
    });
    return list;
  }

  private renderControls(): HTMLElement {
    const bar = this.doc.createElement("div");
    bar.className = "controls";
    for (const action of ["run", "step", "reset"] as const) {
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

  private renderReadouts(): HTMLElement {
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
        if (value === undefined) {
          cell.classList.add("empty");
        } else {
          // color and tooltip come straight from the service numbers
          cell.style.backgroundColor = readoutColor(value);
          cell.title = formatReadout(value);
        }
        row.append(cell);
      }
      grid.append(row);
    }
    return grid;
  }

  private renderAmplitudes(amps: Array<{ basis: string; re: number; im: number }>): void {
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
}
