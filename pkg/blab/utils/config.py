"""Configuration loader for the Birkhoff lab."""

import os
from typing import Any, Callable, Dict, Optional

from blab.exceptions import ConfigurationError

# Brute-force budget caps, keyed by budget name
DEFAULT_BUDGETS: Dict[str, int] = {
  'exposed_n': 6,
  'commutant_m': 8,
  'span_n': 6,
  'vertex_n': 3,
  'blocks': 40,
  'trials': 100000,
  'decompose_n': 12,
}


def _parse_bool(value: str) -> bool:
  return value.lower() in ('true', '1', 'yes', 'on')


class LabConfig:
  """Singleton configuration reader over environment variables.

  Values are read on every access, so changes to the environment take effect
  immediately.
  """

  _instance: Optional['LabConfig'] = None

  # Dotted key -> (environment variable, parser, default)
  _ENV_MAP: Dict[str, tuple] = {
    'seed': ('BLAB_SEED', int, 0),
    'eps_tol': ('BLAB_EPS_TOL', float, 1e-9),
    'eps_res': ('BLAB_EPS_RES', float, 1e-9),
    'eps_it': ('BLAB_EPS_IT', float, 1e-12),
    'max_iterations': ('BLAB_MAX_ITERATIONS', int, 10000),
    'output': ('BLAB_OUTPUT', str, 'json'),
    'debug': ('BLAB_DEBUG', _parse_bool, False),
  }

  def __new__(cls) -> 'LabConfig':
    """Create singleton instance of LabConfig."""
    if cls._instance is None:
      cls._instance = super().__new__(cls)
    return cls._instance

  def _read(self, env_var: str, parser: Callable[[str], Any], default: Any) -> Any:
    value = os.getenv(env_var)
    if value is None or value == '':
      return default
    try:
      return parser(value)
    except ValueError as e:
      raise ConfigurationError(f'Invalid value for {env_var}: {value!r}', env_var) from e

  def get(self, key_path: str, default: Any = None) -> Any:
    """Get configuration value using dot notation (e.g., 'budgets.span_n')."""
    if key_path.startswith('budgets.'):
      name = key_path.split('.', 1)[1]
      if name not in DEFAULT_BUDGETS:
        return default
      return self.budgets[name]

    entry = self._ENV_MAP.get(key_path)
    if entry is None:
      return default
    env_var, parser, fallback = entry
    return self._read(env_var, parser, fallback)

  @property
  def seed(self) -> int:
    """Get the default seed for randomized trials."""
    seed = self.get('seed')
    if not 0 <= seed < 2**64:
      raise ConfigurationError(f'BLAB_SEED must fit in 64 bits, got {seed}', 'BLAB_SEED')
    return seed

  @property
  def eps_tol(self) -> float:
    """Get the float-mode comparison tolerance."""
    eps = self.get('eps_tol')
    if eps <= 0:
      raise ConfigurationError('BLAB_EPS_TOL must be positive', 'BLAB_EPS_TOL')
    return eps

  @property
  def eps_res(self) -> float:
    """Get the residual tolerance for float decompositions."""
    return self.get('eps_res')

  @property
  def eps_it(self) -> float:
    """Get the relative tolerance for power iteration."""
    return self.get('eps_it')

  @property
  def max_iterations(self) -> int:
    """Get the iteration cap for power iteration."""
    return self.get('max_iterations')

  @property
  def output(self) -> str:
    """Get the default report format."""
    output = self.get('output').lower()
    if output not in ('json', 'csv'):
      raise ConfigurationError(f'BLAB_OUTPUT must be json or csv, got {output}', 'BLAB_OUTPUT')
    return output

  @property
  def debug(self) -> bool:
    """Get debug mode setting."""
    return self.get('debug')

  @property
  def budgets(self) -> Dict[str, int]:
    """Get the brute-force budget caps, overridable via BLAB_BUDGET_<NAME>."""
    return {
      name: self._read(f'BLAB_BUDGET_{name.upper()}', int, default)
      for name, default in DEFAULT_BUDGETS.items()
    }


# Global config instance
config = LabConfig()


def get_config() -> LabConfig:
  """Get the global configuration instance."""
  return config
