/** Browser glue: real WebSocket, keyboard listener, HUD injection. */

import { GameClient, type SocketLike } from "./client.js";
import { renderHUD } from "./hud.js";
import type { Condition } from "./protocol.js";

function wrapWebSocket(url: string): SocketLike {
  const ws = new WebSocket(url);
  const wrapper: SocketLike = {
    send: (frame) => ws.send(frame),
    close: () => ws.close(),
    onmessage: null,
    onopen: null,
    onclose: null,
  };
  ws.onmessage = (event) => wrapper.onmessage?.(String(event.data));
  ws.onopen = () => wrapper.onopen?.();
  ws.onclose = () => wrapper.onclose?.();
  ws.onerror = () => wrapper.onclose?.();
  return wrapper;
}

function start(): void {
  const hud = document.getElementById("hud");
  const form = document.getElementById("connect-form") as HTMLFormElement | null;
  if (hud === null || form === null) {
    return;
  }

  let client: GameClient | null = null;

  form.addEventListener("submit", (submitEvent) => {
    submitEvent.preventDefault();
    const url = (document.getElementById("url") as HTMLInputElement).value;
    const condition = (document.getElementById("condition") as HTMLSelectElement)
      .value as Condition;
    const withTraining = (document.getElementById("training") as HTMLInputElement).checked;

    const socket = wrapWebSocket(url);
    client = new GameClient(socket, (vm) => {
      hud.innerHTML = renderHUD(vm);
    });
    socket.onopen = () => client?.connectAndStart({ condition, withTraining });
    socket.onclose = () => {
      hud.innerHTML =
        `<div class="error">connection lost &mdash; check the service and reconnect</div>` +
        hud.innerHTML;
    };
  });

  document.addEventListener("keydown", (keyEvent) => {
    if (client === null || keyEvent.repeat) {
      return;
    }
    if (keyEvent.key === "p") {
      if (client.vm.paused) {
        client.resume();
      } else {
        client.pause();
      }
      return;
    }
    if (keyEvent.key === " ") {
      keyEvent.preventDefault(); // keep the page from scrolling on zoom
    }
    client.keydown(keyEvent.key);
  });
}

document.addEventListener("DOMContentLoaded", start);
