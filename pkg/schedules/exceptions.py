__license__ = 'MIT License <http://www.opensource.org/licenses/mit-license.php>'
__docformat__ = 'epytext'


class ScheduleError(Exception):
    """
    Base class of all errors raised for invalid schedules, profiles or
    scenarios. Management commands report these with exit code 2.
    """


class InvalidChromosome(ScheduleError, ValueError):
    pass


class MissingCost(ScheduleError, LookupError):
    pass


class NoConfiguration(ScheduleError, LookupError):
    pass


class ProfileConflict(ScheduleError, ValueError):
    pass


class CatalogTooSmall(ScheduleError, ValueError):
    pass


class InconsistentSolution(ScheduleError, ValueError):
    pass


class EmptyTrace(ScheduleError, ValueError):
    pass


class IncompleteRequest(ScheduleError, LookupError):
    pass


class InvalidScenario(ScheduleError, ValueError):
    def __init__(self, message, code):
        super(InvalidScenario, self).__init__(message)
        self.code = code
