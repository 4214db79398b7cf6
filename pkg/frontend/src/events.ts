// Server-sent-event subscription for one session. The server closes the
// stream at every pause point (breakpoint/finished/error); the caller
// resubscribes with the next start index after resuming.

import type { Readout } from "./api";

export interface SessionEvent {
  type: "step" | "breakpoint" | "finished" | "error";
  pc: number;
  clock: number;
  status: string;
  readouts: Readout[];
  message?: string;
}

export interface EventSubscription {
  close(): void;
}

type EventSourceLike = {
  onmessage: ((ev: { data: string }) => void) | null;
  onerror: ((ev: unknown) => void) | null;
  close(): void;
};

export function subscribeEvents(
  url: string,
  onEvent: (ev: SessionEvent) => void,
  onClose: () => void = () => {},
  factory: (url: string) => EventSourceLike = (u) =>
    new EventSource(u) as unknown as EventSourceLike,
): EventSubscription {
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
    const event = JSON.parse(ev.data) as SessionEvent;
    onEvent(event);
    if (event.type !== "step") finish();
  };
  // the server closing the stream surfaces as an error event
  source.onerror = finish;
  return { close: finish };
}
