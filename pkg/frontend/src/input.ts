/**
 * Keyboard surrogates for the motion gestures.
 *
 *   Q / E   kick left / right
 *   A / D   punch left / right
 *   W       zoom+kick
 *   S       zoom+squat (shield)
 *   Space   zoom (confirm)
 */

import type { GestureMsg } from "./protocol.js";

const BINDINGS: Record<string, { gesture: GestureMsg["gesture"]; direction: GestureMsg["direction"] }> = {
  q: { gesture: "kick", direction: "left" },
  e: { gesture: "kick", direction: "right" },
  a: { gesture: "punch", direction: "left" },
  d: { gesture: "punch", direction: "right" },
  w: { gesture: "zoom_kick", direction: "neutral" },
  s: { gesture: "zoom_squat", direction: "neutral" },
  " ": { gesture: "zoom", direction: "neutral" },
};

/** Map a key to a gesture frame, or null if the key is unbound. */
export function mapInput(key: string): GestureMsg | null {
  const binding = BINDINGS[key.toLowerCase()];
  if (!binding) {
    return null;
  }
  return { type: "gesture", gesture: binding.gesture, direction: binding.direction };
}

export function boundKeys(): string[] {
  return Object.keys(BINDINGS);
}
