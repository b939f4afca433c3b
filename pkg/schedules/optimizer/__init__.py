__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'

from schedules.optimizer.chromosome import Chromosome, SearchSpace
from schedules.optimizer.config import GAConfig
from schedules.optimizer.evaluation import Evaluator, SimulationEvaluator
from schedules.optimizer.ga import GeneticSearch, ParetoArchive, init_population, run_ga
from schedules.optimizer.local_search import dominates, local_search_merge, local_search_reposition
from schedules.optimizer.operators import crossover, mutate
from schedules.optimizer.selection import nsga3_select
