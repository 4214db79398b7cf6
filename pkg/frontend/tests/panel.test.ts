// The two release scenarios for the debugger UI, against a scripted service:
// a finished run shows the answer qubit at the red extreme with its numeric
// value on hover, and a drag-composed identity program runs to a green
// display. The readout numbers in the mocks are the emulator's own outputs
// for these runs; the UI never computes any of them.

import type {
  ApiClient,
  ControlResult,
  CreateSessionRequest,
  ProgramDoc,
  Readout,
  SessionHandle,
  Snapshot,
} from "../src/api";
import { PURE_GREEN, PURE_RED } from "../src/colors";
import { ExecutionPanel } from "../src/panel";

const IDEAL_SET = {
  name: "Ideal",
  num_qubits: 2,
  instructions: [
    { name: "Initialize", kind: "initialize", tau_over_2pi: 0, J: [], fields: [] },
    { name: "Breakpoint", kind: "breakpoint", tau_over_2pi: 0, J: [], fields: [] },
    { name: "X1", kind: "normal", tau_over_2pi: 0.25, J: [], fields: [] },
    { name: "Y1", kind: "normal", tau_over_2pi: 0.25, J: [], fields: [] },
    { name: "Yb1", kind: "normal", tau_over_2pi: 0.25, J: [], fields: [] },
  ],
};

// engine outputs: d-j3 on the ideal set ends in the basis state with qubit 1
// flipped (Q1z = 1, Q2z = 0, transverse readouts at 1/2)
const DJ3_FINAL: Readout[] = [
  { x: 0.5, y: 0.5, z: 1.0 },
  { x: 0.5, y: 0.5, z: 0.0 },
];
// engine outputs: Initialize, Y1, Yb1 restores the ground state
const GROUND: Readout[] = [
  { x: 0.5, y: 0.5, z: 0.0 },
  { x: 0.5, y: 0.5, z: 0.0 },
];

class MockApi {
  created: CreateSessionRequest[] = [];
  controls: string[] = [];
  finalReadouts: Readout[] = DJ3_FINAL;
  failCreate: string | null = null;

  private handle(status: string): SessionHandle {
    const program = this.created[this.created.length - 1]?.program;
    const steps =
      typeof program === "object" ? [...program.steps] : ["Initialize"];
    return {
      id: "s1", status, set: "Ideal",
      program: typeof program === "object" ? program.name : String(program),
      pc: steps.length, steps, clock: 0, num_qubits: 2, error: null,
    };
  }

  async createSession(req: CreateSessionRequest): Promise<SessionHandle> {
    if (this.failCreate) throw new Error(this.failCreate);
    this.created.push(req);
    return this.handle("ready");
  }

  async control(_id: string, action: string): Promise<ControlResult> {
    this.controls.push(action);
    return {
      ...this.handle("finished"),
      new_trace: [
        { index: 0, name: "last", clock: 0, readouts: this.finalReadouts },
      ],
    };
  }

  async snapshot(): Promise<Snapshot> {
    return {
      id: "s1", status: "finished", pc: 0, clock: 0,
      readouts: this.finalReadouts,
      amplitudes: [
        { basis: "|00>", re: 0, im: 0 },
        { basis: "|10>", re: 0.7071, im: -0.7071 },
        { basis: "|01>", re: 0, im: 0 },
        { basis: "|11>", re: 0, im: 0 },
      ],
    };
  }

  eventsUrl(id: string, start = 0): string {
    return `/events/${id}?start=${start}`;
  }
}

const noEvents = () => ({
  onmessage: null,
  onerror: null,
  close() {},
});

function makePanel(program: ProgramDoc, api: MockApi): ExecutionPanel {
  return new ExecutionPanel({
    api: api as unknown as ApiClient,
    set: IDEAL_SET,
    program,
    eventSourceFactory: noEvents,
  });
}

function cell(panel: ExecutionPanel, axis: string, qubit: number): HTMLElement {
  const found = panel.root.querySelector(
    `.qcell[data-axis='${axis}'][data-qubit='${qubit}']`,
  );
  expect(found).not.toBeNull();
  return found as HTMLElement;
}

function dropItem(panel: ExecutionPanel, item: string): void {
  const list = panel.root.querySelector("ol.steps")!;
  const ev = new Event("drop", { bubbles: true, cancelable: true });
  Object.defineProperty(ev, "dataTransfer", {
    value: { getData: () => item },
  });
  list.dispatchEvent(ev);
}

describe("finished d-j3 session display", () => {
  it("shows qubit 1's z cell at the red extreme with 1.000 on hover", async () => {
    const api = new MockApi();
    api.finalReadouts = DJ3_FINAL;
    const panel = makePanel(
      { name: "d-j3", steps: ["Initialize", "X1"] }, api,
    );
    await panel.control("run");
    const q1z = cell(panel, "z", 1);
    expect(q1z.style.backgroundColor).toBe(PURE_RED);
    expect(q1z.title).toBe("1.000");
    const q2z = cell(panel, "z", 2);
    expect(q2z.style.backgroundColor).toBe(PURE_GREEN);
    expect(q2z.title).toBe("0.000");
  });
});

describe("drag-and-drop composition", () => {
  it("builds [Initialize, Y1, Yb1] and runs to a green display", async () => {
    const api = new MockApi();
    api.finalReadouts = GROUND;
    const panel = makePanel({ name: "mine", steps: [] }, api);

    dropItem(panel, "Initialize");
    dropItem(panel, "Y1");
    dropItem(panel, "Yb1");
    expect(panel.steps).toEqual(["Initialize", "Y1", "Yb1"]);

    await panel.control("run");
    // the composed program went to the service as JSON
    const sent = api.created[0].program as ProgramDoc;
    expect(sent.steps).toEqual(["Initialize", "Y1", "Yb1"]);
    // both answer cells render pure green
    expect(cell(panel, "z", 1).style.backgroundColor).toBe(PURE_GREEN);
    expect(cell(panel, "z", 2).style.backgroundColor).toBe(PURE_GREEN);
    expect(cell(panel, "z", 1).title).toBe("0.000");
  });

  it("reorders steps by drag index", () => {
    const api = new MockApi();
    const panel = makePanel({ name: "p", steps: ["Y1", "Initialize"] }, api);
    panel.reorder(1, 0);
    expect(panel.steps).toEqual(["Initialize", "Y1"]);
  });

  it("invalidates the session after an edit", async () => {
    const api = new MockApi();
    const panel = makePanel({ name: "p", steps: ["Initialize"] }, api);
    await panel.control("run");
    dropItem(panel, "Y1");
    await panel.control("run");
    expect(api.created.length).toBe(2); // new session for the edited program
  });

  it("notifies program changes for persistence", () => {
    const saved: ProgramDoc[] = [];
    const panel = new ExecutionPanel({
      api: new MockApi() as unknown as ApiClient,
      set: IDEAL_SET,
      program: { name: "p", steps: [] },
      eventSourceFactory: noEvents,
      onProgramChange: (doc) => saved.push(doc),
    });
    dropItem(panel, "Initialize");
    expect(saved).toEqual([{ name: "p", steps: ["Initialize"] }]);
  });
});

describe("service diagnostics", () => {
  it("surfaces validation errors from session creation", async () => {
    const api = new MockApi();
    api.failCreate = "MI not found: Z9";
    const panel = makePanel({ name: "bad", steps: ["Z9"] }, api);
    await panel.control("run");
    const error = panel.root.querySelector(".error")!;
    expect(error.textContent).toContain("Z9");
  });

  it("rejects dropping an unknown item with a diagnostic", () => {
    const panel = new ExecutionPanel({
      api: new MockApi() as unknown as ApiClient,
      set: IDEAL_SET,
      program: { name: "p", steps: [] },
      knownItems: new Set(["Initialize", "X1", "Y1", "Yb1"]),
      eventSourceFactory: noEvents,
    });
    dropItem(panel, "Z9");
    expect(panel.steps).toEqual([]);
    const error = panel.root.querySelector(".error")!;
    expect(error.textContent).toContain("Z9");
    dropItem(panel, "X1"); // a valid drop clears the diagnostic
    expect(panel.steps).toEqual(["X1"]);
    expect(panel.root.querySelector(".error")!.textContent).toBe("");
  });
});

describe("breakpoint pause display", () => {
  it("highlights the program row at the service pc", async () => {
    const api = new MockApi();
    api.control = async (): Promise<ControlResult> => ({
      id: "s1", status: "paused_at_breakpoint", set: "Ideal", program: "bp",
      pc: 3, steps: ["Initialize", "X1", "Breakpoint", "Y1"],
      clock: 0, num_qubits: 2, error: null,
      new_trace: [{ index: 2, name: "Breakpoint", clock: 0, readouts: GROUND }],
    });
    const panel = makePanel(
      { name: "bp", steps: ["Initialize", "X1", "Breakpoint", "Y1"] }, api,
    );
    await panel.control("run");
    const rows = panel.root.querySelectorAll("ol.steps li");
    expect(rows[3].classList.contains("current")).toBe(true);
    expect(rows[1].classList.contains("current")).toBe(false);
  });
});

describe("controls", () => {
  it("maps buttons to control actions", async () => {
    const api = new MockApi();
    const panel = makePanel({ name: "p", steps: ["Initialize"] }, api);
    const button = panel.root.querySelector(
      "button[data-action='run']",
    ) as HTMLButtonElement;
    button.click();
    await new Promise((resolve) => setTimeout(resolve, 0));
    expect(api.controls).toEqual(["run"]);
  });

  it("shows the amplitude inspector on demand", async () => {
    const api = new MockApi();
    const panel = makePanel({ name: "p", steps: ["Initialize"] }, api);
    await panel.control("run");
    await panel.toggleAmplitudes();
    const holder = panel.root.querySelector(".amplitudes")!;
    expect(holder.textContent).toContain("|10>");
    expect(holder.textContent).toContain("0.707100");
  });
});
