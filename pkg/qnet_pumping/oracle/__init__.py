from .utility import evaluate_objective, utility_gradient, resolve_alpha
from .rate_region import RateRegionSolution, region_vertices, solve_utility_optimum, write_solution
