/**
 * HUD rendering: ViewModel in, HTML string out (pure, so it is testable
 * without a DOM). main.ts injects the result into the page.
 */

import type { ViewModel } from "./viewmodel.js";

const MOVE_LABELS: Record<string, string> = {
  kick: "Kick (Q/E)",
  punch: "Punch (A/D)",
  zoom_kick: "Zoom+Kick (W)",
  zoom_squat: "Zoom+Squat (S)",
};

const MOVE_MAX_COOLDOWN: Record<string, number> = {
  kick: 3,
  punch: 3,
  zoom_kick: 5,
  zoom_squat: 3,
};

function bar(value: number, max: number, cssClass: string): string {
  const pct = max <= 0 ? 0 : Math.max(0, Math.min(100, (value / max) * 100));
  return `<div class="bar ${cssClass}"><div class="fill" style="width:${pct.toFixed(1)}%"></div>` +
    `<span class="label">${value}/${max}</span></div>`;
}

function hearts(lives: number): string {
  return "&#10084;".repeat(Math.max(0, lives)) || "&mdash;";
}

function phaseLine(vm: ViewModel): string {
  const phase = vm.phase;
  if (phase === null) {
    return "waiting for the arena...";
  }
  switch (phase.name) {
    case "training": {
      const stage = phase.stage ?? "?";
      const progress = phase.progress ?? 0;
      return phase.awaiting_zoom
        ? `training: ${stage} done &mdash; zoom (Space) to continue`
        : `training: perform ${stage} (${progress}/2)`;
    }
    case "gameplay":
      return "fight!";
    case "revive":
      return phase.awaiting_zoom
        ? "revive: zoom (Space) to return"
        : `revive: squat! (${phase.defenses_done ?? 0}/5)`;
    case "inter_life_wait":
      return `the monster is getting back up${phase.remaining !== undefined ? ` (${phase.remaining.toFixed(1)}s)` : ""}...`;
    case "terminal":
      return `session over &mdash; winner: ${phase.winner ?? "?"}`;
  }
}

export function renderHUD(vm: ViewModel): string {
  const parts: string[] = [];
  parts.push(
    `<div class="status">` +
      `<span class="badge condition-${vm.condition ?? "none"}">${vm.condition ?? "no session"}</span>` +
      `<span class="badge">${vm.connection}${vm.paused ? " (paused)" : ""}</span>` +
      `<span class="clock">t=${vm.time.toFixed(1)}s</span>` +
      `</div>`,
  );
  parts.push(`<div class="phase">${phaseLine(vm)}</div>`);

  if (vm.player !== null && vm.monster !== null) {
    parts.push(
      `<section class="combatant player"><h2>You ${hearts(vm.player.lives)}</h2>` +
        bar(vm.player.hp, 100, "hp") +
        `</section>`,
    );
    const indicator = vm.attackIndicator;
    parts.push(
      `<section class="combatant monster"><h2>Monster ${hearts(vm.monster.lives)}</h2>` +
        bar(vm.monster.hp, 500, "hp monster-hp") +
        `<div class="position">position ${vm.monster.position.toFixed(2)}m</div>` +
        // The indicator is identical for real attacks and feints on purpose.
        (indicator !== null
          ? `<div class="attack-flash">incoming attack... ${indicator.elapsed.toFixed(1)}s</div>`
          : "") +
        `</section>`,
    );
    const cooldowns = Object.entries(vm.player.cooldowns)
      .map(([move, remaining]) => {
        const max = MOVE_MAX_COOLDOWN[move] ?? 1;
        const ready = remaining <= 0;
        return (
          `<div class="cooldown ${ready ? "ready" : "cooling"}">` +
          `<span>${MOVE_LABELS[move] ?? move}</span>` +
          bar(max - remaining, max, "cd") +
          `</div>`
        );
      })
      .join("");
    parts.push(`<section class="cooldowns">${cooldowns}</section>`);
    parts.push(
      vm.shield.active
        ? `<div class="shield on">shield up: ${vm.shield.remaining.toFixed(2)}s</div>`
        : `<div class="shield off">no shield</div>`,
    );
  }

  if (vm.critCallout !== null) {
    parts.push(`<div class="crit">${vm.critCallout}</div>`);
  }
  if (vm.lastEvent !== null) {
    parts.push(`<div class="ticker">${vm.lastEvent}</div>`);
  }
  if (vm.ended !== null) {
    const rows = Object.entries(vm.ended.metrics)
      .filter(([, value]) => value !== null)
      .map(([name, value]) => `<tr><td>${name}</td><td>${Number(value).toFixed(2)}</td></tr>`)
      .join("");
    parts.push(
      `<section class="results"><h2>Winner: ${vm.ended.winner ?? "nobody"}</h2>` +
        `<table>${rows}</table></section>`,
    );
  }
  for (const err of vm.errors.slice(-3)) {
    parts.push(`<div class="error">${err.code}: ${err.message}</div>`);
  }
  return parts.join("\n");
}
