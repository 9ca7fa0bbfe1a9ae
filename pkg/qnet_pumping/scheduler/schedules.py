from qnet_pumping.exceptions import ConfigException


class StepSchedule:
    def gamma(self, t):
        raise NotImplementedError()

    def __eq__(self, other):
        return type(self) == type(other) and vars(self) == vars(other)

    def __repr__(self):
        attrs_str = ', '.join([f'{k}={v}' for k, v in vars(self).items()])
        return f'{self.__class__.__name__}({attrs_str})'


class FixedStep(StepSchedule):
    def __init__(self, gamma):
        if not 0 < gamma <= 1:
            raise ConfigException(f'Fixed step size must lie in (0, 1], got {gamma!r}')
        self.value = float(gamma)

    def gamma(self, t):
        return self.value

    @property
    def label(self):
        return f'fixed:{self.value:g}'


class HarmonicStep(StepSchedule):
    """gamma(t) = 1/(t+1); the loop starts at t = 1"""

    def gamma(self, t):
        if t < 1:
            raise ConfigException(f'Harmonic step is defined for t >= 1, got {t}')
        return 1.0 / (t + 1)

    @property
    def label(self):
        return 'harmonic'


def parse_schedule(text):
    """fixed:<g> | harmonic"""
    if isinstance(text, StepSchedule):
        return text
    key = str(text).strip().lower()
    if key == 'harmonic':
        return HarmonicStep()
    elif key.startswith('fixed:'):
        try:
            gamma = float(key.split(':', 1)[1])
        except ValueError:
            raise ConfigException(f'Invalid step size in schedule {text!r}')
        return FixedStep(gamma)
    raise ConfigException(f'Unknown schedule {text!r}. Available options are: fixed:<g>, harmonic.')
