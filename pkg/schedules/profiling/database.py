__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

import json
import logging
import os
import threading

from schedules.exceptions import ProfileConflict

logger = logging.getLogger(__name__)


class ProfileDB(object):
    """
    Subgraph times keyed by content hash and processor configuration.

    Every key is written once. When a path is given, the database loads the
    records found there and appends new ones as JSON lines, so repeated
    searches reuse earlier profiling results.
    """

    def __init__(self, path=None):
        self.path = path
        self.hits = 0
        self.misses = 0
        self._times = {}
        self._lock = threading.Lock()

        if path and os.path.exists(path):
            with open(path) as handle:
                for line in handle:
                    if line.strip():
                        record = json.loads(line)
                        self._times[(record['digest'], record['config'])] = record['time_us']
            logger.debug('loaded %d profile records from %s', len(self._times), path)

    def __len__(self):
        return len(self._times)

    def __contains__(self, key):
        digest, config = key
        return (digest, config.key) in self._times

    def get(self, digest, config):
        time = self._times.get((digest, config.key))
        if time is None:
            self.misses += 1
        else:
            self.hits += 1
        return time

    def put(self, digest, config, time):
        if not time > 0:
            raise ValueError('profiled times must be positive, got %r' % time)

        key = (digest, config.key)
        with self._lock:
            stored = self._times.get(key)
            if stored is not None:
                if stored != time:
                    raise ProfileConflict(
                        '%s on %s already profiled at %r us, not %r' % (digest[:12], config.key, stored, time))
                return
            self._times[key] = time
            if self.path:
                with open(self.path, 'a') as handle:
                    handle.write(json.dumps({'digest': digest, 'config': config.key, 'time_us': time}) + '\n')
