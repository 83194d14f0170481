/**
 * The HUD state as a pure fold over server messages.
 *
 * The client holds no game logic: every field below is copied from frames
 * the server sent (plus the condition the user asked for at start). Folding
 * the same message sequence always yields the same ViewModel, and whether an
 * in-progress attack is a feint is never represented — the indicator looks
 * identical either way until the attack resolves or vanishes.
 */

import type { Condition, PhaseInfo, ServerMessage, SnapshotMsg } from "./protocol.js";

export interface AttackIndicator {
  actor: string;
  move: string;
  /** Seconds since launch, from the latest snapshot. */
  elapsed: number;
}

export interface ViewModel {
  connection: "idle" | "connected" | "in-session" | "ended";
  schemaVersion: string | null;
  /** Condition badge: what the user requested at start. */
  condition: Condition | null;
  paused: boolean;
  time: number;
  phase: PhaseInfo | null;
  player: SnapshotMsg["player"] | null;
  monster: SnapshotMsg["monster"] | null;
  shield: { active: boolean; remaining: number };
  /** Sanitized view of the monster's current animation; no feint flag. */
  attackIndicator: AttackIndicator | null;
  /** Set when an attack resolves as a critical hit; cleared on next snapshot. */
  critCallout: string | null;
  /** Rolling HUD ticker of the most recent notable event. */
  lastEvent: string | null;
  ended: { winner: string | null; metrics: Record<string, number | null> } | null;
  errors: { code: string; message: string }[];
}

export function initialViewModel(): ViewModel {
  return {
    connection: "idle",
    schemaVersion: null,
    condition: null,
    paused: false,
    time: 0,
    phase: null,
    player: null,
    monster: null,
    shield: { active: false, remaining: 0 },
    attackIndicator: null,
    critCallout: null,
    lastEvent: null,
    ended: null,
    errors: [],
  };
}

/** Local (client-originated) transitions; each corresponds to a sent frame. */
export function noteStart(vm: ViewModel, condition: Condition): ViewModel {
  return { ...vm, condition, connection: "in-session", ended: null, paused: false };
}

export function notePaused(vm: ViewModel, paused: boolean): ViewModel {
  return { ...vm, paused };
}

export function applyMessage(vm: ViewModel, msg: ServerMessage): ViewModel {
  switch (msg.type) {
    case "welcome":
      return {
        ...vm,
        connection: vm.connection === "idle" ? "connected" : vm.connection,
        schemaVersion: msg.schema_version,
      };
    case "snapshot": {
      const monster = msg.monster;
      let indicator = vm.attackIndicator;
      if (!monster.attack_in_progress) {
        indicator = null;
      } else if (indicator !== null) {
        indicator = { ...indicator, elapsed: monster.attack_elapsed ?? 0 };
      } else {
        // Snapshot saw an attack we have no launch event for (joined late).
        indicator = { actor: "monster", move: "?", elapsed: monster.attack_elapsed ?? 0 };
      }
      return {
        ...vm,
        time: msg.time,
        phase: msg.phase,
        player: msg.player,
        monster,
        shield: msg.shield,
        attackIndicator: indicator,
        critCallout: null,
      };
    }
    case "event":
      return applyEvent(vm, msg.event);
    case "ended":
      return {
        ...vm,
        connection: "ended",
        ended: { winner: msg.winner, metrics: msg.metrics },
      };
    case "protocol_error":
      return { ...vm, errors: [...vm.errors, { code: msg.code, message: msg.message }] };
  }
}

function applyEvent(vm: ViewModel, event: Record<string, unknown>): ViewModel {
  const kind = String(event.kind);
  switch (kind) {
    case "attack_launched": {
      if (event.actor === "monster") {
        // Deliberately ignores event.is_false: real and feint look the same.
        return {
          ...vm,
          attackIndicator: { actor: "monster", move: String(event.move), elapsed: 0 },
          lastEvent: "monster attacks!",
        };
      }
      return { ...vm, lastEvent: `you used ${String(event.move)}` };
    }
    case "attack_resolved": {
      const crit = event.crit === true;
      const missed = event.missed === true;
      const blocked = event.blocked === true;
      const actor = String(event.actor);
      const next: ViewModel = {
        ...vm,
        attackIndicator: actor === "monster" ? null : vm.attackIndicator,
      };
      if (crit) {
        next.critCallout = `critical hit! ${String(event.damage_dealt)} damage`;
        next.lastEvent = next.critCallout;
      } else if (missed) {
        next.lastEvent = `${actor} missed`;
      } else if (blocked) {
        next.lastEvent = "blocked!";
      } else {
        next.lastEvent = `${actor} dealt ${String(event.damage_dealt)}`;
      }
      return next;
    }
    case "shield_activated":
      return { ...vm, lastEvent: "shield up" };
    case "shield_expired":
      return { ...vm, lastEvent: event.blocked_any ? "shield held" : "shield faded" };
    case "heal_applied":
      return { ...vm, lastEvent: `healed ${String(event.amount)}` };
    case "life_lost":
      return { ...vm, lastEvent: `${String(event.actor)} lost a life` };
    case "phase_changed": {
      const to = event.to as PhaseInfo | undefined;
      return { ...vm, lastEvent: to ? `phase: ${to.name}` : vm.lastEvent };
    }
    case "monster_walked":
      return { ...vm, lastEvent: "monster repositions" };
    case "session_ended":
      return { ...vm, lastEvent: `winner: ${String(event.winner)}` };
    default:
      return vm; // unknown event kinds are ignored, never fatal
  }
}

/** Fold a full recorded frame sequence (already decoded) into a ViewModel. */
export function foldMessages(messages: ServerMessage[], from?: ViewModel): ViewModel {
  let vm = from ?? initialViewModel();
  for (const msg of messages) {
    vm = applyMessage(vm, msg);
  }
  return vm;
}
