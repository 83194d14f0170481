import { describe, expect, it } from "vitest";

import { DecodeError, decode, encode, type Message } from "../src/protocol.js";

const VARIANTS: Message[] = [
  { type: "hello", client_version: "web/0.1" },
  { type: "start", condition: "uncertain", with_training: true, seed: 99 },
  { type: "start", condition: "certain", with_training: false, seed: null },
  { type: "gesture", gesture: "kick", direction: "left" },
  { type: "gesture", gesture: "zoom_squat", direction: "neutral" },
  { type: "pause" },
  { type: "resume" },
  { type: "welcome", schema_version: "gf/1", config: { monster_max_hp: 500 } },
  {
    type: "snapshot",
    time: 1.5,
    phase: { name: "gameplay" },
    player: { hp: 80, lives: 3, cooldowns: { kick: 0.5 } },
    monster: { hp: 420, lives: 3, position: -0.4, attack_in_progress: true, attack_elapsed: 0.3 },
    shield: { active: false, remaining: 0 },
  },
  { type: "event", event: { seq: 4, time: 2.0, kind: "shield_activated" } },
  { type: "ended", winner: "player", metrics: { total_energy: 42.5, "success_rate.kick": null } },
  { type: "protocol_error", code: "bad-message", message: "nope" },
];

describe("codec", () => {
  it.each(VARIANTS.map((m) => [m.type, m] as const))("round-trips %s", (_name, message) => {
    expect(decode(encode(message))).toEqual(message);
  });

  it("puts the type field first", () => {
    for (const message of VARIANTS) {
      expect(encode(message).startsWith(`{"type":"${message.type}"`)).toBe(true);
    }
  });

  it("decodes frames exactly as the service emits them", () => {
    // Literal frames captured from the Python service implementation.
    const snapshot = decode(
      '{"type":"snapshot","time":0.5,"phase":{"name":"gameplay"},' +
        '"player":{"hp":50,"lives":1,"cooldowns":{"kick":0.0,"punch":0.0,"zoom_kick":0.0,"zoom_squat":3.0}},' +
        '"monster":{"hp":60,"lives":1,"position":0.0,"attack_in_progress":false,"attack_elapsed":null},' +
        '"shield":{"active":true,"remaining":2.0}}',
    );
    expect(snapshot.type).toBe("snapshot");
    if (snapshot.type === "snapshot") {
      expect(snapshot.shield.remaining).toBe(2.0);
      expect(snapshot.player.cooldowns["zoom_squat"]).toBe(3.0);
    }
    const error = decode('{"type":"protocol_error","code":"already-running","message":"session in progress"}');
    expect(error).toEqual({ type: "protocol_error", code: "already-running", message: "session in progress" });
  });

  it("rejects unknown types", () => {
    expect(() => decode('{"type":"teleport"}')).toThrowError(DecodeError);
    try {
      decode('{"type":"teleport"}');
    } catch (err) {
      expect((err as DecodeError).code).toBe("unknown-type");
    }
  });

  it("rejects bad JSON and non-objects", () => {
    expect(() => decode("{{{")).toThrowError(DecodeError);
    expect(() => decode("[1,2]")).toThrowError(DecodeError);
  });

  it("rejects missing or invalid fields", () => {
    expect(() => decode('{"type":"gesture"}')).toThrowError(DecodeError);
    expect(() => decode('{"type":"gesture","gesture":"headbutt"}')).toThrowError(DecodeError);
    expect(() => decode('{"type":"welcome"}')).toThrowError(DecodeError);
  });
});
