__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

from dataclasses import dataclass, field

from schedules.conf import settings
from schedules.exceptions import MissingCost, NoConfiguration

MiB = 1 << 20

DTYPES = ('fp32', 'fp16', 'int8')


@dataclass(frozen=True)
class ProcessorConfig:
    processor: str
    backend: str
    dtype: str

    def __post_init__(self):
        if self.dtype not in DTYPES:
            raise ValueError('unknown data type %r' % self.dtype)

    @property
    def key(self):
        return '%s/%s/%s' % (self.processor, self.backend, self.dtype)

    @classmethod
    def parse(cls, key):
        processor, backend, dtype = key.split('/')
        return cls(processor, backend, dtype)

    def __str__(self):
        return self.key


@dataclass(frozen=True)
class NonLinearityParams:
    """
    How a processor's subgraph time departs from the sum of its layer
    times: a fixed launch cost, a per-layer dispatch cost and a contraction
    factor approaching C{rho_inf} as subgraphs grow.
    """

    launch: float = 0.0
    dispatch: float = 0.0
    rho_inf: float = 1.0

    def __post_init__(self):
        if self.launch < 0 or self.dispatch < 0:
            raise ValueError('launch and dispatch costs must not be negative')
        if not 0 < self.rho_inf <= 1:
            raise ValueError('rho_inf must lie in (0, 1]')

    def rho(self, n):
        return self.rho_inf + (1.0 - self.rho_inf) / n


@dataclass(frozen=True)
class CommCostParams:
    bandwidth: float = 40e9
    rpc_small: tuple = (40.0, 30.0)
    rpc_large: tuple = (25.0, 45.0)

    def __post_init__(self):
        object.__setattr__(self, 'rpc_small', tuple(self.rpc_small))
        object.__setattr__(self, 'rpc_large', tuple(self.rpc_large))
        if self.bandwidth <= 0:
            raise ValueError('bandwidth must be positive')
        if self.rpc_small[0] < 0 or self.rpc_large[0] < 0:
            raise ValueError('RPC slopes must not be negative')

    @classmethod
    def defaults(cls):
        return cls(settings.BANDWIDTH, settings.RPC_SMALL, settings.RPC_LARGE)

    def rpc(self, size):
        slope, intercept = self.rpc_small if size < MiB else self.rpc_large
        return slope * size / MiB + intercept


def default_nonlinearity():
    return {p: NonLinearityParams(**v) for p, v in settings.NONLINEARITY.items()}


@dataclass(frozen=True, eq=False)
class DeviceProfile:
    """
    Everything the simulator needs to know about the device: its
    processors, their configurations, per-layer times and the cost models
    for execution, communication and data type conversion.
    """

    processors: tuple
    configs: tuple
    layer_costs: dict
    nonlin: dict = field(default_factory=default_nonlinearity)
    comm: CommCostParams = field(default_factory=CommCostParams.defaults)
    quant_throughput: float = field(default_factory=lambda: settings.QUANT_THROUGHPUT)
    host: str = field(default_factory=lambda: settings.HOST)

    def __post_init__(self):
        object.__setattr__(self, 'processors', tuple(self.processors))
        object.__setattr__(self, 'configs', tuple(self.configs))
        if self.quant_throughput <= 0:
            raise ValueError('quantization throughput must be positive')

    def configs_for(self, processor):
        return [c for c in self.configs if c.processor == processor]

    def nonlinearity(self, processor):
        try:
            return self.nonlin[processor]
        except KeyError:
            return NonLinearityParams()

    def index(self, processor):
        try:
            return self.processors.index(processor)
        except ValueError:
            raise NoConfiguration('processor %s is not part of the profile' % processor)

    def layer_cost(self, network, layer_id, config):
        try:
            return self.layer_costs[network][layer_id][config.key]
        except KeyError:
            raise MissingCost('%s layer %s has no cost on %s' % (network, layer_id, config.key))
