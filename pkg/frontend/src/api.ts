// Typed client for the emulator debug service. Every number shown anywhere
// in the UI comes from these responses; the frontend never computes physics.

export interface CouplingDoc {
  j: number;
  k: number;
  axis: string;
  value: number;
}

export interface FieldDoc {
  qubit: number;
  axis: string;
  h0: number;
  h1: number;
  f: number;
  phi: number;
}

export interface MiDoc {
  name: string;
  kind: string;
  tau_over_2pi: number;
  J: CouplingDoc[];
  fields: FieldDoc[];
}

export interface SetDoc {
  name: string;
  num_qubits: number;
  instructions: MiDoc[];
}

export interface ProgramDoc {
  name: string;
  steps: string[];
}

export interface Readout {
  x: number;
  y: number;
  z: number;
}

export interface SessionHandle {
  id: string;
  status: string;
  set: string;
  program: string;
  pc: number;
  steps: string[];
  clock: number;
  num_qubits: number;
  error: string | null;
}

export interface TraceRecord {
  index: number;
  name: string;
  clock: number;
  readouts: Readout[];
}

export interface ControlResult extends SessionHandle {
  new_trace: TraceRecord[];
}

export interface AmplitudeDoc {
  basis: string;
  re: number;
  im: number;
}

export interface Snapshot {
  id: string;
  status: string;
  pc: number;
  clock: number;
  readouts: Readout[];
  amplitudes?: AmplitudeDoc[];
}

export interface CreateSessionRequest {
  set: string | SetDoc;
  program: string | ProgramDoc;
  library?: Record<string, ProgramDoc>;
  clock?: string;
  delta?: number;
}

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function jsonOrThrow<T>(resp: Response): Promise<T> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (body && body.detail) detail = String(body.detail);
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(resp.status, detail);
  }
  return (await resp.json()) as T;
}

export class ApiClient {
  constructor(private base: string = "") {}

  listSets(): Promise<{ sets: SetDoc[] }> {
    return fetch(`${this.base}/sets`).then((r) => jsonOrThrow(r));
  }

  listPrograms(): Promise<{ programs: ProgramDoc[] }> {
    return fetch(`${this.base}/programs`).then((r) => jsonOrThrow(r));
  }

  createSession(req: CreateSessionRequest): Promise<SessionHandle> {
    return fetch(`${this.base}/sessions`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
    }).then((r) => jsonOrThrow(r));
  }

  control(id: string, action: "run" | "step" | "reset"): Promise<ControlResult> {
    return fetch(`${this.base}/sessions/${id}/control`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ action }),
    }).then((r) => jsonOrThrow(r));
  }

  snapshot(id: string, detail: "readouts" | "amplitudes" = "readouts"): Promise<Snapshot> {
    return fetch(`${this.base}/sessions/${id}/snapshot?detail=${detail}`).then(
      (r) => jsonOrThrow(r),
    );
  }

  eventsUrl(id: string, start = 0): string {
    return `${this.base}/events/${id}?start=${start}`;
  }
}
