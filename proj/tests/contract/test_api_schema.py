"""Validates live service responses against the published JSON schema.

Usage: test_api_schema.py PROOFBENCH_BINARY DATA_DIR
"""

import os
import re
import subprocess
import sys
import tempfile
import threading
import time
import unittest

import jsonschema
import requests

BINARY = None
DATA = None


class Service:
    def __init__(self, *args):
        self.proc = subprocess.Popen(
            [BINARY, "serve", "--port", "0", *args],
            stdout=subprocess.PIPE,
            stderr=subprocess.PIPE,
            text=True,
        )
        line = self.proc.stdout.readline()
        m = re.match(r"listening on (http://\S+)", line)
        if not m:
            self.proc.kill()
            raise RuntimeError("unexpected banner: %r %s" % (line, self.proc.stderr.read()))
        self.base = m.group(1)

    def url(self, path):
        return self.base + path

    def close(self):
        self.proc.terminate()
        try:
            code = self.proc.wait(timeout=10)
        except subprocess.TimeoutExpired:
            self.proc.kill()
            raise
        finally:
            self.proc.stdout.close()
            self.proc.stderr.close()
        return code


class ApiContract(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.svc = Service("--db", os.path.join(DATA, "fig3.lks"))
        cls.schema = requests.get(cls.svc.url("/api/schema"), timeout=10).json()
        jsonschema.Draft202012Validator.check_schema(cls.schema)

    @classmethod
    def tearDownClass(cls):
        assert cls.svc.close() == 0

    def validate(self, body, name):
        ref = {"$ref": "#/$defs/" + name, "$defs": self.schema["$defs"]}
        jsonschema.validate(body, ref, cls=jsonschema.Draft202012Validator)

    def get(self, path, status=200):
        r = requests.get(self.svc.url(path), timeout=60)
        self.assertEqual(r.status_code, status, r.text)
        return r

    def post(self, path, body, status=200):
        r = requests.post(self.svc.url(path), json=body, timeout=60)
        self.assertEqual(r.status_code, status, r.text)
        return r.json()

    def load(self, name):
        db = self.post("/api/db/load", {"path": os.path.join(DATA, name)})
        self.validate(db, "db")
        return db

    def test_db(self):
        db = self.get("/api/db").json()
        self.validate(db, "db")
        self.assertIn("psi", [p["name"] for p in db["proofs"]])

    def test_proof_and_views(self):
        self.load("fig3.lks")
        self.validate(self.get("/api/proof/psi?n=2").json(), "proofDocument")
        for query in ["", "&hideStructural=true", "&hideContext=1", "&markCutAncestors=true", "&focus=1", "&hidden=1,2"]:
            self.validate(self.get("/api/object/psi/view?n=2" + query).json(), "viewDocument")
        hits = self.get("/api/object/psi/search?n=2&q=cut").json()
        self.validate(hits, "searchResult")
        self.assertTrue(hits["hits"])

    def test_transforms(self):
        self.load("quantcut.lks")
        rev = self.get("/api/db").json()["revision"]
        for op in ["gentzen", "ceres", "skolemize", "regularize", "struct", "clauseset", "projections", "cutformulas"]:
            t = self.post("/api/proof/lemma/transform", {"op": op, "revision": rev})
            self.validate(t, "transformResult")
            self.validate(self.get("/api/object/%s/view" % t["name"]).json(), "viewDocument")
        self.validate(self.get("/api/db").json(), "db")
        self.load("e2.lks")
        t = self.post("/api/proof/E2/transform", {"op": "herbrand"})
        self.validate(t, "transformResult")
        self.validate(self.get("/api/object/E2.herbrand/view").json(), "viewDocument")
        self.validate(self.get("/api/object/$definitions/view").json(), "viewDocument")

    def test_errors(self):
        self.load("quantcut.lks")
        cases = [
            (requests.get, "/api/proof/nope", None, 404),
            (requests.get, "/api/unknown", None, 404),
            (requests.post, "/api/proof/lemma/transform", {"op": "herbrand"}, 422),
            (requests.post, "/api/proof/lemma/transform", {"op": "gentzen", "revision": 0}, 409),
            (requests.post, "/api/proof/lemma/transform", {"op": "nope"}, 400),
            (requests.post, "/api/db/load", {"text": "proof E proves P |- {\n}\n"}, 400),
            (requests.get, "/api/object/lemma/search?q=", None, 400),
            (requests.delete, "/api/transform/none", None, 404),
        ]
        for method, path, body, status in cases:
            r = method(self.svc.url(path), json=body, timeout=60) if body is not None else method(self.svc.url(path), timeout=60)
            self.assertEqual(r.status_code, status, path)
            self.assertEqual(r.headers["Content-Type"], "application/json")
            self.validate(r.json(), "error")
            self.assertEqual(r.json()["error"]["status"], status)

    def test_cancel(self):
        self.load("fig3.lks")
        result = {}

        def run():
            result["r"] = requests.post(
                self.svc.url("/api/proof/psi/transform"),
                json={"op": "gentzen", "n": 200, "requestId": "contract-1"},
                timeout=300,
            )

        worker = threading.Thread(target=run)
        worker.start()
        deadline = time.time() + 30
        while time.time() < deadline:
            r = requests.delete(self.svc.url("/api/transform/contract-1"), timeout=10)
            if r.status_code == 200:
                self.validate(r.json(), "cancelResult")
                break
            time.sleep(0.02)
        else:
            self.fail("transform never became pending")
        worker.join(60)
        self.assertFalse(worker.is_alive())
        self.assertEqual(result["r"].status_code, 409)
        self.validate(result["r"].json(), "error")
        self.assertEqual(result["r"].json()["error"]["code"], "cancelled")

    def test_exports(self):
        self.load("e1.lks")
        for fmt, media in [("tex", "text/x-latex"), ("tptp", "text/plain"), ("json", "application/json")]:
            r = self.get("/api/object/E1/export?format=" + fmt)
            self.assertTrue(r.headers["Content-Type"].startswith(media), r.headers["Content-Type"])
            self.assertIn("attachment", r.headers["Content-Disposition"])
        body = self.get("/api/object/E1/export?format=json").json()
        self.validate(body, "proofDocument")

    def test_placeholder(self):
        r = self.get("/")
        self.assertIn("text/html", r.headers["Content-Type"])


class StaticAssets(unittest.TestCase):
    def test_static_dir(self):
        with tempfile.TemporaryDirectory() as d:
            with open(os.path.join(d, "index.html"), "w") as f:
                f.write("<!doctype html><title>viewer</title>")
            with open(os.path.join(d, "main.js"), "w") as f:
                f.write("export {};")
            svc = Service("--static", d, "--cors")
            try:
                r = requests.get(svc.url("/"), timeout=10)
                self.assertEqual(r.status_code, 200)
                self.assertIn("viewer", r.text)
                r = requests.get(svc.url("/main.js"), timeout=10)
                self.assertEqual(r.status_code, 200)
                self.assertIn("javascript", r.headers["Content-Type"])
                r = requests.get(svc.url("/api/db"), timeout=10)
                self.assertEqual(r.headers.get("Access-Control-Allow-Origin"), "*")
            finally:
                self.assertEqual(svc.close(), 0)


if __name__ == "__main__":
    BINARY, DATA = sys.argv[1], sys.argv[2]
    unittest.main(argv=sys.argv[:1], verbosity=2)
