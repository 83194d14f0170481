import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import { describe, expect, it } from "vitest";

import { decode, type ServerMessage } from "../src/protocol.js";
import { applyMessage, foldMessages, initialViewModel } from "../src/viewmodel.js";

const here = dirname(fileURLToPath(import.meta.url));

function fixtureMessages(): ServerMessage[] {
  const text = readFileSync(join(here, "fixtures", "session_frames.jsonl"), "utf-8");
  return text
    .split("\n")
    .filter((line) => line.trim() !== "")
    .map((line) => decode(line) as ServerMessage);
}

function loadExpected(name: string): { after_frames?: number; viewmodel: unknown } {
  return JSON.parse(readFileSync(join(here, "fixtures", name), "utf-8"));
}

describe("golden fixture fold", () => {
  it("matches the hand-derived mid-session ViewModel", () => {
    const expected = loadExpected("expected_mid.json");
    const messages = fixtureMessages().slice(0, expected.after_frames);
    const vm = foldMessages(messages);
    expect(JSON.parse(JSON.stringify(vm))).toEqual(expected.viewmodel);
  });

  it("matches the hand-derived final ViewModel", () => {
    const expected = loadExpected("expected_final.json");
    const vm = foldMessages(fixtureMessages());
    expect(JSON.parse(JSON.stringify(vm))).toEqual(expected.viewmodel);
  });

  it("is a pure fold: same messages, same result, no input mutation", () => {
    const messages = fixtureMessages();
    const first = foldMessages(messages);
    const second = foldMessages(messages);
    expect(second).toEqual(first);
    const start = initialViewModel();
    const frozen = JSON.stringify(start);
    foldMessages(messages, start);
    expect(JSON.stringify(start)).toBe(frozen);
  });
});

describe("attack indicator asymmetry", () => {
  const launch = (isFalse: boolean): ServerMessage => ({
    type: "event",
    event: {
      seq: 1,
      time: 2.0,
      kind: "attack_launched",
      actor: "monster",
      move: "monster_punch",
      is_false: isFalse,
    },
  });

  it("renders feints and real attacks identically at launch", () => {
    const real = applyMessage(initialViewModel(), launch(false));
    const feint = applyMessage(initialViewModel(), launch(true));
    expect(feint).toEqual(real);
    expect(real.attackIndicator).toEqual({ actor: "monster", move: "monster_punch", elapsed: 0 });
    expect(JSON.stringify(real)).not.toContain("is_false");
  });

  it("clears the indicator when the snapshot shows no attack", () => {
    let vm = applyMessage(initialViewModel(), launch(true));
    vm = applyMessage(vm, {
      type: "snapshot",
      time: 3.0,
      phase: { name: "gameplay" },
      player: { hp: 100, lives: 3, cooldowns: {} },
      monster: { hp: 500, lives: 3, position: 0, attack_in_progress: false, attack_elapsed: null },
      shield: { active: false, remaining: 0 },
    });
    expect(vm.attackIndicator).toBeNull();
  });
});

describe("event reactions", () => {
  it("raises a crit callout and clears it on the next snapshot", () => {
    let vm = applyMessage(initialViewModel(), {
      type: "event",
      event: {
        seq: 7,
        time: 4.0,
        kind: "attack_resolved",
        actor: "player",
        move: "zoom_kick",
        missed: false,
        crit: true,
        damage_dealt: 45,
        blocked: false,
      },
    });
    expect(vm.critCallout).toContain("45");
    vm = applyMessage(vm, {
      type: "snapshot",
      time: 4.1,
      phase: { name: "gameplay" },
      player: { hp: 100, lives: 3, cooldowns: {} },
      monster: { hp: 455, lives: 3, position: 0, attack_in_progress: false, attack_elapsed: null },
      shield: { active: false, remaining: 0 },
    });
    expect(vm.critCallout).toBeNull();
  });

  it("collects protocol errors without losing state", () => {
    let vm = initialViewModel();
    vm = applyMessage(vm, { type: "protocol_error", code: "already-running", message: "x" });
    vm = applyMessage(vm, { type: "protocol_error", code: "bad-message", message: "y" });
    expect(vm.errors.map((e) => e.code)).toEqual(["already-running", "bad-message"]);
  });
});
