/**
 * GameClient: the single place that talks to the socket.
 *
 * Orchestrates the handshake (hello -> welcome -> start), forwards mapped
 * key presses as gesture frames (dropped while paused or outside a session),
 * and folds every inbound frame into the ViewModel. The socket is injected
 * so tests can script a session without a network.
 */

import { mapInput } from "./input.js";
import { decode, encode, type Condition, type ServerMessage } from "./protocol.js";
import {
  applyMessage,
  initialViewModel,
  notePaused,
  noteStart,
  type ViewModel,
} from "./viewmodel.js";

export interface SocketLike {
  send(frame: string): void;
  close(): void;
  onmessage: ((text: string) => void) | null;
  onopen: (() => void) | null;
  onclose: (() => void) | null;
}

export const CLIENT_VERSION = "web/0.1";

export interface StartOptions {
  condition: Condition;
  withTraining?: boolean;
  seed?: number | null;
}

export class GameClient {
  vm: ViewModel = initialViewModel();
  private pendingStart: StartOptions | null = null;
  private started = false;

  constructor(
    private readonly socket: SocketLike,
    private readonly onChange: (vm: ViewModel) => void = () => {},
  ) {
    socket.onmessage = (text) => this.handleFrame(text);
    socket.onclose = () => {
      this.vm = { ...this.vm, connection: "idle" };
      this.onChange(this.vm);
    };
  }

  /** Handshake then start: hello now, start as soon as welcome arrives. */
  connectAndStart(options: StartOptions): void {
    this.pendingStart = options;
    this.socket.send(encode({ type: "hello", client_version: CLIENT_VERSION }));
  }

  keydown(key: string): void {
    if (!this.started || this.vm.paused || this.vm.connection === "ended") {
      return; // input while paused (or without a session) sends nothing
    }
    const gesture = mapInput(key);
    if (gesture !== null) {
      this.socket.send(encode(gesture));
    }
  }

  pause(): void {
    if (!this.started || this.vm.paused) {
      return;
    }
    this.socket.send(encode({ type: "pause" }));
    this.vm = notePaused(this.vm, true);
    this.onChange(this.vm);
  }

  resume(): void {
    if (!this.started || !this.vm.paused) {
      return;
    }
    this.socket.send(encode({ type: "resume" }));
    this.vm = notePaused(this.vm, false);
    this.onChange(this.vm);
  }

  private handleFrame(text: string): void {
    let message: ServerMessage;
    try {
      message = decode(text) as ServerMessage;
    } catch (err) {
      this.vm = {
        ...this.vm,
        errors: [...this.vm.errors, { code: "client-decode", message: String(err) }],
      };
      this.onChange(this.vm);
      return;
    }
    this.vm = applyMessage(this.vm, message);
    if (message.type === "welcome" && this.pendingStart !== null) {
      const options = this.pendingStart;
      this.pendingStart = null;
      this.socket.send(
        encode({
          type: "start",
          condition: options.condition,
          with_training: options.withTraining ?? false,
          seed: options.seed ?? null,
        }),
      );
      this.started = true;
      this.vm = noteStart(this.vm, options.condition);
    }
    this.onChange(this.vm);
  }
}
