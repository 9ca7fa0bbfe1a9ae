class QnetException(Exception):
    pass


class ConfigException(QnetException):
    pass


class TopologyException(QnetException):
    pass


class ScheduleException(QnetException):
    pass


class ConvergenceException(QnetException):
    pass


class DomainException(QnetException):
    pass
