__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

from schedules.conf import settings


def one_point(a, b, point):
    """
    Swaps the tails of two gene lists after C{point}, in place.
    """

    a[point:], b[point:] = b[point:], a[point:]
    return a, b


def upmx(a, b, rng, indpb):
    """
    Uniform partially matched crossover of two permutations of
    C{range(n)}, in place. Every position is exchanged with probability
    C{indpb}; the displaced values move to where the incoming ones were,
    so both lists stay permutations.
    """

    size = min(len(a), len(b))
    pos_a, pos_b = [0] * size, [0] * size
    for i in range(size):
        pos_a[a[i]] = i
        pos_b[b[i]] = i

    for i in range(size):
        if rng.random() < indpb:
            va, vb = a[i], b[i]
            a[i], a[pos_a[vb]] = vb, va
            b[i], b[pos_b[va]] = va, vb
            pos_a[va], pos_a[vb] = pos_a[vb], pos_a[va]
            pos_b[va], pos_b[vb] = pos_b[vb], pos_b[va]
    return a, b


def crossover(parent_a, parent_b, rng, indpb=None):
    """
    Mates two chromosomes in place: one-point crossover with its own cut
    point for every partition and mapping gene list, UPMX on the
    priorities.

    @rtype: tuple
    @return: the two children
    """

    if indpb is None:
        indpb = settings.GA_UPMX_PROB
    for genes in ('partition', 'mapping'):
        for a, b in zip(getattr(parent_a, genes), getattr(parent_b, genes)):
            if len(a) > 1:
                one_point(a, b, rng.randint(1, len(a) - 1))
    upmx(parent_a.priority, parent_b.priority, rng, indpb)
    return parent_a, parent_b


def mutate(chromosome, space, config, rng):
    for bits, prefs in zip(chromosome.partition, chromosome.mapping):
        flip = config.bit_flip_prob if config.bit_flip_prob is not None else 1.0 / max(len(bits), 1)
        for i in range(len(bits)):
            if rng.random() < flip:
                bits[i] ^= 1
        reset = config.mapping_prob if config.mapping_prob is not None else 1.0 / max(len(prefs), 1)
        for i in range(len(prefs)):
            if rng.random() < reset:
                prefs[i] = rng.choice(space.choices)

    priority = chromosome.priority
    if len(priority) > 1 and rng.random() < config.swap_prob:
        i, j = rng.sample(range(len(priority)), 2)
        priority[i], priority[j] = priority[j], priority[i]
    return chromosome
