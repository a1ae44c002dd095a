// Thin protocol client: request/response over HTTP, live Events over the
// /session channel.  The WebSocket constructor is injected so tests can
// run under node with the "ws" package.

import type {
  DesignCommand,
  EventMsg,
  SnapshotMsg,
  UsageReport,
} from "./protocol";

type WebSocketLike = {
  onmessage: ((ev: { data: unknown }) => void) | null;
  onopen: ((ev?: unknown) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  close(): void;
};

export type WebSocketCtor = new (url: string) => WebSocketLike;

export class SessionClient {
  private socket: WebSocketLike | null = null;

  constructor(
    readonly baseUrl: string,
    private wsCtor: WebSocketCtor,
    private fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  async postCommand(command: DesignCommand): Promise<EventMsg> {
    const res = await this.fetchFn(`${this.baseUrl}/command`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(command),
    });
    return (await res.json()) as EventMsg;
  }

  async getDocument(): Promise<SnapshotMsg> {
    const res = await this.fetchFn(`${this.baseUrl}/document`);
    return (await res.json()) as SnapshotMsg;
  }

  async getUsage(): Promise<UsageReport> {
    const res = await this.fetchFn(`${this.baseUrl}/usage`);
    return (await res.json()) as UsageReport;
  }

  async getExportSvg(scrapId: number): Promise<string> {
    const res = await this.fetchFn(`${this.baseUrl}/export/svg?scrap=${scrapId}`);
    return await res.text();
  }

  /**
   * Open the live channel.  The server sends a full snapshot first, then
   * Events in seq order; both are forwarded to the handlers.
   */
  connect(handlers: {
    onSnapshot: (snap: SnapshotMsg) => void;
    onEvent: (event: EventMsg) => void;
    onClose?: () => void;
  }): Promise<void> {
    const wsUrl = this.baseUrl.replace(/^http/, "ws") + "/session";
    return new Promise((resolve) => {
      const socket = new this.wsCtor(wsUrl);
      this.socket = socket;
      socket.onopen = () => resolve();
      socket.onclose = () => handlers.onClose?.();
      socket.onmessage = (ev) => {
        const msg = JSON.parse(String(ev.data));
        if (msg.type === "snapshot") handlers.onSnapshot(msg as SnapshotMsg);
        else handlers.onEvent(msg as EventMsg);
      };
    });
  }

  disconnect() {
    this.socket?.close();
    this.socket = null;
  }
}
