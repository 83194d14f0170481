"""Shared fixtures: a background WebSocket service with a sync client."""

import asyncio
import json
import threading
import time

import pytest

from feintfight.config import GameConfig
from feintfight.service.server import serve_async


class ServiceHandle:
    def __init__(self):
        self.port = None
        self.server = None
        self.loop = None
        self.thread = None
        self._started = threading.Event()

    @property
    def service(self):
        return self.server.service

    def url(self) -> str:
        return f"ws://127.0.0.1:{self.port}"

    def start(self, defaults: GameConfig, tick_scale: float, log_dir=None):
        def runner():
            async def main():
                self.server = await serve_async(
                    host="127.0.0.1", port=0, defaults=defaults,
                    log_dir=log_dir, tick_scale=tick_scale,
                )
                self.loop = asyncio.get_running_loop()
                self.port = self.server.sockets[0].getsockname()[1]
                self._started.set()
                try:
                    await self.server.serve_forever()
                except asyncio.CancelledError:
                    pass

            asyncio.run(main())

        self.thread = threading.Thread(target=runner, daemon=True)
        self.thread.start()
        if not self._started.wait(10):
            raise RuntimeError("service did not start")
        return self

    def stop(self):
        if self.loop is not None:
            self.loop.call_soon_threadsafe(self.server.close)
        self.thread.join(timeout=5)


@pytest.fixture
def make_service(tmp_path):
    handles = []

    def factory(defaults=None, tick_scale=0.0, log_dir=None):
        handle = ServiceHandle().start(defaults or GameConfig(), tick_scale, log_dir)
        handles.append(handle)
        return handle

    yield factory
    for handle in handles:
        handle.stop()


class SyncClient:
    """Minimal blocking client over websockets.sync for scripted tests."""

    def __init__(self, url: str):
        from websockets.sync.client import connect

        self.ws = connect(url, open_timeout=10)

    def send(self, frame: dict) -> None:
        self.ws.send(json.dumps(frame))

    def recv(self, timeout=10.0) -> dict:
        return json.loads(self.ws.recv(timeout=timeout))

    def recv_until(self, predicate, timeout=10.0, collect=None):
        """Read frames until predicate(frame) is true; returns that frame."""
        deadline = time.monotonic() + timeout
        while True:
            remaining = deadline - time.monotonic()
            if remaining <= 0:
                raise TimeoutError("frame not seen in time")
            frame = self.recv(timeout=remaining)
            if collect is not None:
                collect.append(frame)
            if predicate(frame):
                return frame

    def close(self):
        self.ws.close()


@pytest.fixture
def client_for():
    clients = []

    def factory(handle) -> SyncClient:
        client = SyncClient(handle.url())
        clients.append(client)
        return client

    yield factory
    for client in clients:
        try:
            client.close()
        except Exception:
            pass
