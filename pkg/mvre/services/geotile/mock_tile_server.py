# mvre/services/geotile/mock_tile_server.py

"""
Local HTTP tile endpoint serving a tile store directory. Used by the
integration tests to script transient failures.
"""

# Default libs
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path


class MockTileServer:
    """
    Serves GET /tiles/<quadkey>.png from `root` (same lookup as
    DirectorySource). The first `fail_first` requests of every quadkey
    answer 503. Usable as a context manager; binds an ephemeral port.

    Attributes:
        template: URL template to hand to RemoteSource
        request_count: total requests received
    """

    def __init__(self, root: Path, fail_first: int = 0, fail_status: int = 503):
        self.root = Path(root)
        self.fail_first = fail_first
        self.fail_status = fail_status
        self.request_count = 0
        self._attempts: dict[str, int] = {}
        self._lock = threading.Lock()
        self._httpd: ThreadingHTTPServer | None = None
        self._thread: threading.Thread | None = None


    @property
    def template(self) -> str:
        host, port = self._httpd.server_address[:2]
        return f"http://{host}:{port}/tiles/{{quadkey}}.png"


    def _lookup(self, quadkey: str) -> Path | None:
        for candidate in (self.root / str(len(quadkey)) / f"{quadkey}.png",
                          self.root / f"{quadkey}.png"):
            if candidate.is_file():
                return candidate
        return None


    def _handler(self) -> type[BaseHTTPRequestHandler]:
        server = self

        class Handler(BaseHTTPRequestHandler):
            def do_GET(self):
                name = self.path.rsplit("/", 1)[-1]
                quadkey = name[:-4] if name.endswith(".png") else name
                with server._lock:
                    server.request_count += 1
                    attempt = server._attempts.get(quadkey, 0)
                    server._attempts[quadkey] = attempt + 1

                if attempt < server.fail_first:
                    self.send_response(server.fail_status)
                    self.end_headers()
                    return

                path = server._lookup(quadkey)
                if path is None:
                    self.send_response(404)
                    self.end_headers()
                    return

                blob = path.read_bytes()
                self.send_response(200)
                self.send_header("Content-Type", "image/png")
                self.send_header("Content-Length", str(len(blob)))
                self.end_headers()
                self.wfile.write(blob)

            def log_message(self, format, *args):
                pass

        return Handler


    def start(self) -> "MockTileServer":
        self._httpd = ThreadingHTTPServer(("127.0.0.1", 0), self._handler())
        self._thread = threading.Thread(target=self._httpd.serve_forever, daemon=True)
        self._thread.start()
        return self


    def stop(self) -> None:
        if self._httpd is not None:
            self._httpd.shutdown()
            self._httpd.server_close()
            self._httpd = None


    def __enter__(self) -> "MockTileServer":
        return self.start()


    def __exit__(self, *exc) -> None:
        self.stop()
