__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

from itertools import chain
from math import comb

import numpy as np
from deap import tools


def reference_points(n_objectives, population, divisions=None):
    """
    Das-Dennis reference directions on the unit simplex. Without explicit
    divisions, the smallest count yielding at least one point per member
    of the population is used.

    @rtype: numpy.ndarray
    """

    if divisions is None:
        divisions = 1
        while comb(divisions + n_objectives - 1, n_objectives - 1) < population:
            divisions += 1
    return tools.uniform_reference_points(n_objectives, divisions)


def associate(normalized, refs):
    """
    Nearest reference direction of every point and the perpendicular
    distance to it.
    """

    norm = np.linalg.norm(refs, axis=1)
    projection = normalized @ refs.T / norm
    foot = projection[:, :, np.newaxis] * refs[np.newaxis, :, :] / norm[np.newaxis, :, np.newaxis]
    distances = np.linalg.norm(foot - normalized[:, np.newaxis, :], axis=2)
    niches = np.argmin(distances, axis=1)
    return niches, distances[np.arange(len(niches)), niches]


def _niching(candidates, k, niches, distances, counts, rng):
    selected = []
    available = np.ones(len(candidates), dtype=bool)
    while len(selected) < k:
        open_niches = np.unique(niches[available])
        least = counts[open_niches].min()
        picks = rng.permutation(open_niches[counts[open_niches] == least])[:k - len(selected)]
        for niche in picks:
            members = np.flatnonzero((niches == niche) & available)
            chosen = members[np.argmin(distances[members])]
            available[chosen] = False
            counts[niche] += 1
            selected.append(candidates[chosen])
    return selected


def nsga3_select(individuals, k, refs, rng):
    """
    Keeps C{k} individuals: whole non-dominated fronts while they fit, then
    members of the first front that does not fit, one per least crowded
    reference direction.

    Objectives are normalized by the ideal and nadir points of the kept
    fronts and the last front; later fronts do not enter the scale. Niches
    tied on crowding are visited in an order drawn from C{rng}; within a
    niche the member closest to its direction wins.

    @type  individuals: list
    @param individuals: chromosomes with valid fitness
    @type  refs: numpy.ndarray
    @type  rng: numpy.random.Generator
    """

    if k >= len(individuals):
        return list(individuals)

    fronts = tools.sortNondominated(individuals, k)
    chosen = list(chain(*fronts[:-1]))
    last = fronts[-1]
    remaining = k - len(chosen)
    if remaining == len(last):
        return chosen + list(last)

    pool = chosen + list(last)
    values = np.array([ind.fitness.values for ind in pool], dtype=float)
    ideal = values.min(axis=0)
    span = values.max(axis=0) - ideal
    span[span == 0] = 1.0
    niches, distances = associate((values - ideal) / span, np.asarray(refs, dtype=float))

    counts = np.zeros(len(refs), dtype=np.int64)
    np.add.at(counts, niches[:len(chosen)], 1)
    return chosen + _niching(last, remaining, niches[len(chosen):], distances[len(chosen):], counts, rng)
