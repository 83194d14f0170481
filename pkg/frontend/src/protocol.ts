/**
 * Protocol gf/1 frames: typed encode/decode for the play-service WebSocket.
 *
 * Text frames, one JSON object each, "type" first. decode() validates the
 * shape and throws DecodeError on anything it cannot accept; the client
 * surfaces that as a protocol error without dropping the connection.
 */

export type Condition = "certain" | "uncertain";
export type Gesture = "kick" | "punch" | "zoom_kick" | "zoom_squat" | "zoom";
export type Direction = "left" | "right" | "neutral";

export interface HelloMsg {
  type: "hello";
  client_version: string;
}

export interface StartMsg {
  type: "start";
  condition: Condition;
  with_training: boolean;
  seed: number | null;
}

export interface GestureMsg {
  type: "gesture";
  gesture: Gesture;
  direction: Direction;
}

export interface PauseMsg {
  type: "pause";
}

export interface ResumeMsg {
  type: "resume";
}

export type ClientMessage = HelloMsg | StartMsg | GestureMsg | PauseMsg | ResumeMsg;

export interface PhaseInfo {
  name: "training" | "gameplay" | "revive" | "inter_life_wait" | "terminal";
  stage?: Gesture;
  progress?: number;
  awaiting_zoom?: boolean;
  defenses_done?: number;
  remaining?: number;
  winner?: string;
}

export interface WelcomeMsg {
  type: "welcome";
  schema_version: string;
  config: Record<string, unknown>;
}

export interface SnapshotMsg {
  type: "snapshot";
  time: number;
  phase: PhaseInfo;
  player: {
    hp: number;
    lives: number;
    cooldowns: Record<string, number>;
  };
  monster: {
    hp: number;
    lives: number;
    position: number;
    attack_in_progress: boolean;
    attack_elapsed: number | null;
  };
  shield: { active: boolean; remaining: number };
}

export interface EventMsg {
  type: "event";
  event: Record<string, unknown> & { seq: number; time: number; kind: string };
}

export interface EndedMsg {
  type: "ended";
  winner: string | null;
  metrics: Record<string, number | null>;
}

export interface ProtocolErrorMsg {
  type: "protocol_error";
  code: string;
  message: string;
}

export type ServerMessage = WelcomeMsg | SnapshotMsg | EventMsg | EndedMsg | ProtocolErrorMsg;
export type Message = ClientMessage | ServerMessage;

export class DecodeError extends Error {
  constructor(readonly code: string, message: string) {
    super(message);
  }
}

const GESTURES: readonly string[] = ["kick", "punch", "zoom_kick", "zoom_squat", "zoom"];
const DIRECTIONS: readonly string[] = ["left", "right", "neutral"];

export function encode(message: Message): string {
  // Object literals keep "type" first in the serialized frame.
  switch (message.type) {
    case "hello":
      return JSON.stringify({ type: "hello", client_version: message.client_version });
    case "start":
      return JSON.stringify({
        type: "start",
        condition: message.condition,
        with_training: message.with_training,
        seed: message.seed,
      });
    case "gesture":
      return JSON.stringify({
        type: "gesture",
        gesture: message.gesture,
        direction: message.direction,
      });
    case "pause":
      return JSON.stringify({ type: "pause" });
    case "resume":
      return JSON.stringify({ type: "resume" });
    case "welcome":
      return JSON.stringify({
        type: "welcome",
        schema_version: message.schema_version,
        config: message.config,
      });
    case "snapshot":
      return JSON.stringify({
        type: "snapshot",
        time: message.time,
        phase: message.phase,
        player: message.player,
        monster: message.monster,
        shield: message.shield,
      });
    case "event":
      return JSON.stringify({ type: "event", event: message.event });
    case "ended":
      return JSON.stringify({ type: "ended", winner: message.winner, metrics: message.metrics });
    case "protocol_error":
      return JSON.stringify({
        type: "protocol_error",
        code: message.code,
        message: message.message,
      });
  }
}

function requireField(frame: Record<string, unknown>, name: string): unknown {
  if (!(name in frame)) {
    throw new DecodeError("bad-message", `missing field '${name}' in ${String(frame.type)} frame`);
  }
  return frame[name];
}

export function decode(text: string): Message {
  let frame: unknown;
  try {
    frame = JSON.parse(text);
  } catch (err) {
    throw new DecodeError("bad-message", `frame is not valid JSON: ${String(err)}`);
  }
  if (typeof frame !== "object" || frame === null || Array.isArray(frame)) {
    throw new DecodeError("bad-message", "frame must be a JSON object");
  }
  const obj = frame as Record<string, unknown>;
  switch (obj.type) {
    case "hello":
      return { type: "hello", client_version: String(obj.client_version ?? "") };
    case "start": {
      const condition = obj.condition ?? "uncertain";
      if (condition !== "certain" && condition !== "uncertain") {
        throw new DecodeError("bad-message", `bad condition ${String(condition)}`);
      }
      return {
        type: "start",
        condition,
        with_training: Boolean(obj.with_training ?? false),
        seed: obj.seed === undefined || obj.seed === null ? null : Number(obj.seed),
      };
    }
    case "gesture": {
      const gesture = requireField(obj, "gesture");
      const direction = obj.direction ?? "neutral";
      if (!GESTURES.includes(String(gesture))) {
        throw new DecodeError("bad-message", `unknown gesture ${String(gesture)}`);
      }
      if (!DIRECTIONS.includes(String(direction))) {
        throw new DecodeError("bad-message", `unknown direction ${String(direction)}`);
      }
      return { type: "gesture", gesture: gesture as Gesture, direction: direction as Direction };
    }
    case "pause":
      return { type: "pause" };
    case "resume":
      return { type: "resume" };
    case "welcome":
      return {
        type: "welcome",
        schema_version: String(requireField(obj, "schema_version")),
        config: requireField(obj, "config") as Record<string, unknown>,
      };
    case "snapshot":
      return {
        type: "snapshot",
        time: Number(requireField(obj, "time")),
        phase: requireField(obj, "phase") as PhaseInfo,
        player: requireField(obj, "player") as SnapshotMsg["player"],
        monster: requireField(obj, "monster") as SnapshotMsg["monster"],
        shield: requireField(obj, "shield") as SnapshotMsg["shield"],
      };
    case "event":
      return { type: "event", event: requireField(obj, "event") as EventMsg["event"] };
    case "ended":
      return {
        type: "ended",
        winner: (obj.winner ?? null) as string | null,
        metrics: requireField(obj, "metrics") as EndedMsg["metrics"],
      };
    case "protocol_error":
      return {
        type: "protocol_error",
        code: String(requireField(obj, "code")),
        message: String(obj.message ?? ""),
      };
    default:
      throw new DecodeError("unknown-type", `unknown message type ${String(obj.type)}`);
  }
}
