__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

from dataclasses import dataclass, field

from schedules.conf import settings


def _setting(name):
    return field(default_factory=lambda: getattr(settings, name))


@dataclass(frozen=True)
class GAConfig:
    """
    Parameters of the genetic search.

    @ivar bit_flip_prob: per-gene flip rate of the partition genes,
        C{None} for one over the network's edge count
    @ivar mapping_prob: per-gene reset rate of the mapping genes, C{None}
        for one over the network's layer count
    @ivar divisions: reference point divisions, C{None} for the smallest
        count giving at least one point per population member
    @ivar noisy: measure offspring with execution time jitter
    """

    population: int = _setting('GA_POPULATION')
    crossover_prob: float = _setting('GA_CROSSOVER_PROB')
    bit_flip_prob: float = None
    mapping_prob: float = None
    swap_prob: float = _setting('GA_PRIORITY_SWAP_PROB')
    local_search_prob: float = _setting('GA_LOCAL_SEARCH_PROB')
    upmx_prob: float = _setting('GA_UPMX_PROB')
    patience: int = _setting('GA_PATIENCE')
    min_improvement: float = _setting('GA_MIN_IMPROVEMENT')
    max_generations: int = _setting('GA_MAX_GENERATIONS')
    horizon: int = _setting('HORIZON')
    divisions: int = None
    noisy: bool = True
    seed: int = 0

    def __post_init__(self):
        if self.population < 2 or self.population % 2:
            raise ValueError('the population must be an even number of at least two')
        for name in ('crossover_prob', 'bit_flip_prob', 'mapping_prob', 'swap_prob',
                     'local_search_prob', 'upmx_prob'):
            value = getattr(self, name)
            if value is not None and not 0 <= value <= 1:
                raise ValueError('%s must lie in [0, 1]' % name)
        if self.patience < 1 or self.max_generations < 0:
            raise ValueError('patience must be positive and the generation cap not negative')
