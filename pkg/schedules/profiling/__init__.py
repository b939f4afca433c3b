__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

from schedules.profiling.comm import comm_cost, quant_cost
from schedules.profiling.compute import best_config, model_time, fastest_processor, subgraph_time
from schedules.profiling.database import ProfileDB
from schedules.profiling.device import (
    CommCostParams, DeviceProfile, NonLinearityParams, ProcessorConfig)

__all__ = [
    'CommCostParams', 'DeviceProfile', 'NonLinearityParams', 'ProcessorConfig', 'ProfileDB',
    'best_config', 'comm_cost', 'fastest_processor', 'model_time', 'quant_cost', 'subgraph_time',
]
