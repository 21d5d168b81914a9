#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
lagrange_spectra.cache
----------------------

A content-addressed cache of computed payloads.

Entries live at ``<cache_dir>/<operation>/<key[:2]>/<key>.json`` where the key
is the SHA-256 of the canonical JSON of (operation, parameters, version).
"""

from collections import namedtuple
from datetime import datetime
from glob import iglob
import hashlib
import json
import logging
import os
import re
import tempfile

from lagrange_spectra import __version__

ENTRY_GLOB = '*/*/*.json'
ENTRY_REGEX = r'(?P<key>[0-9a-f]{64})\.json$'
ENTRY_TMPL = "%(key)s.json"
DATETIME_FORMAT = '%Y-%m-%dT%H:%M:%S'

CacheEntry = namedtuple('CacheEntry', ['key', 'payload', 'meta'])


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, separators=(',', ':'),
                      ensure_ascii=True)


def cache_key(operation, params, version=__version__):
    blob = canonical_json({'operation': operation, 'params': params,
                           'version': version})
    return hashlib.sha256(blob.encode('ascii')).hexdigest()


class CachePaths(object):
    """
    Computes where the entry of a key is stored.
    """

    def __init__(self, cache_dir, operation):
        self.cache_dir = cache_dir
        self.operation = operation

    @property
    def operation_dir(self):
        return os.path.join(self.cache_dir, self.operation)

    def entry_path(self, key):
        return os.path.join(self.operation_dir, key[:2],
                            ENTRY_TMPL % {'key': key})

    @staticmethod
    def _get_now():
        # XXX: this is here to facilitate mocking in unit tests
        return datetime.now()

    def timestamp(self):
        return self._get_now().strftime(DATETIME_FORMAT)


def _cached_entries(cache_dir):
    """Generator. Yields (path, key) for every entry under ``cache_dir``."""
    for path in iglob(os.path.join(cache_dir, ENTRY_GLOB)):
        match = re.search(ENTRY_REGEX, path)
        if match:
            yield path, match.group('key')


def _read_entry(path, key):
    """The stored entry, or None when it is missing or unreadable."""
    if not os.path.isfile(path):
        return None
    try:
        with open(path) as f:
            data = json.load(f)
        return CacheEntry(key, data['payload'], data['meta'])
    except (ValueError, KeyError, TypeError) as e:
        logging.warning("Corrupted cache entry %s (%s); recomputing"
                        % (path, e))
        return None


def _write_entry(path, entry):
    """Write through a temporary file in the same directory, then rename."""
    directory = os.path.dirname(path)
    if not os.path.isdir(directory):
        os.makedirs(directory, exist_ok=True)
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix='.tmp')
    try:
        with os.fdopen(fd, 'w') as f:
            f.write(canonical_json({'meta': entry.meta,
                                    'payload': entry.payload}))
        os.replace(tmp_path, path)
    except Exception:
        if os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise
    logging.info("Stored cache entry %s" % path)


def cache_get_or_compute(cache_dir, operation, params, compute,
                         version=__version__):
    """Return the cached payload for (operation, params), computing and
    storing it on a miss.

    ``compute`` returns a JSON-serialisable payload. The payload handed
    back is always the JSON round trip, so warm and cold calls agree.
    """
    if not cache_dir:
        return json.loads(canonical_json(compute()))

    paths = CachePaths(cache_dir, operation)
    key = cache_key(operation, params, version)
    path = paths.entry_path(key)
    entry = _read_entry(path, key)
    if entry is not None:
        if entry.meta.get('version') == version:
            logging.info("Cache hit %s" % path)
            return entry.payload
        logging.info("Ignoring cache entry %s from version %s"
                     % (path, entry.meta.get('version')))

    payload = json.loads(canonical_json(compute()))
    meta = {'version': version, 'timestamp': paths.timestamp(),
            'params': params, 'operation': operation}
    _write_entry(path, CacheEntry(key, payload, meta))
    return payload


def clear_cache(cache_dir, operation=None):
    """Remove stored entries, of one operation or of all. Returns the
    number removed."""
    removed = 0
    for path, _ in list(_cached_entries(cache_dir)):
        if operation is not None and \
                os.path.basename(os.path.dirname(os.path.dirname(path))) \
                != operation:
            continue
        os.remove(path)
        logging.info("Removed %s" % path)
        removed += 1
    return removed
