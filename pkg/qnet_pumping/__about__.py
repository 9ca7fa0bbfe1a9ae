__title__ = 'qnet_pumping'
__package_name__ = 'qnet_pumping'
__version__ = '0.1.0'
__description__ = "Entangled-photon pumping schedules for QKD networks"
__email__ = "dev@qnet-pumping.org"
__author__ = 'qnet_pumping developers'
__github__ = 'https://github.com/qnet-pumping/qnet_pumping'
__pypi__ = 'https://pypi.org/project/qnet_pumping'
__license__ = 'GPL-3.0'
__copyright__ = 'Copyright 2026- qnet_pumping developers'
