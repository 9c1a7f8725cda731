from __future__ import annotations
import hashlib
from typing import Any

import orjson

def canonical_bytes(obj: Any) -> bytes:
    """Compact JSON with sorted keys; the byte string every digest is taken over."""
    return orjson.dumps(obj, option=orjson.OPT_SORT_KEYS)

def digest(obj: Any) -> str:
    return hashlib.sha256(canonical_bytes(obj)).hexdigest()
