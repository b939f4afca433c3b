__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

from django.conf import settings as django_settings

DEFAULTS = {
    # genetic algorithm
    'GA_POPULATION': 64,
    'GA_CROSSOVER_PROB': 0.9,
    'GA_PRIORITY_SWAP_PROB': 0.2,
    'GA_LOCAL_SEARCH_PROB': 0.3,
    'GA_PATIENCE': 3,
    'GA_MIN_IMPROVEMENT': 0.001,
    'GA_MAX_GENERATIONS': 100,
    'GA_UPMX_PROB': 0.5,

    # simulation
    'HORIZON': 20,
    'NOISE_SIGMA': {'CPU': 0.05},
    'NOISE_SIGMA_DEFAULT': 0.01,
    'ALLOC_OVERHEAD': 0.0,
    'COPY_OVERHEAD': 0.0,

    # scoring
    'RT_SENSITIVITY': 15.0,
    'PERIOD_SLACK': 0.1,
    'SATURATION_THRESHOLD': 0.995,

    # device model
    'HOST': 'CPU',
    'PROCESSORS': ('CPU', 'GPU', 'NPU'),
    'BANDWIDTH': 40e9,
    'RPC_SMALL': (40.0, 30.0),
    'RPC_LARGE': (25.0, 45.0),
    'QUANT_THROUGHPUT': 5000.0,
    'NONLINEARITY': {
        'CPU': {'launch': 0.0, 'dispatch': 0.0, 'rho_inf': 1.0},
        'GPU': {'launch': 300.0, 'dispatch': 10.0, 'rho_inf': 0.95},
        'NPU': {'launch': 200.0, 'dispatch': 0.0, 'rho_inf': 0.30},
    },
}


class AppSettings(object):
    """
    Settings of the app. Every name in L{DEFAULTS} can be overridden in the
    project's settings module by prefixing it with C{SCHEDULES_}.
    """

    prefix = 'SCHEDULES_'

    def __getattr__(self, name):
        if name not in DEFAULTS:
            raise AttributeError(name)
        if not django_settings.configured:
            return DEFAULTS[name]
        return getattr(django_settings, self.prefix + name, DEFAULTS[name])


settings = AppSettings()
