"""JSON and CSV rendering of lab reports.

JSON output is sorted and indented so equal reports render byte-identically. CSV
output flattens a report into one row per assertion and per seminorm sample.
"""

import json
from typing import Any, Dict, List, Union

import pandas as pd
from pydantic import BaseModel

from blab.models.types import SeminormReport, SuiteReport

CSV_COLUMNS = ['record', 'name', 'n', 'measured', 'bound', 'passed', 'input']


def to_json(payload: Union[BaseModel, Dict[str, Any], List[Any]]) -> str:
  """Deterministic JSON text for a model or plain payload."""
  if isinstance(payload, BaseModel):
    payload = payload.model_dump(mode='json')
  return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


def _cell(value: Any) -> Any:
  if isinstance(value, (dict, list)):
    return json.dumps(value, sort_keys=True)
  return value


def seminorm_frame(report: SeminormReport) -> pd.DataFrame:
  """One (n, value) row per sample."""
  return pd.DataFrame(
    [{'n': sample.n, 'value': sample.value} for sample in report.samples], columns=['n', 'value']
  )


def suite_frame(report: SuiteReport) -> pd.DataFrame:
  """Assertions followed by the samples of every seminorm report."""
  rows = [
    {
      'record': 'assertion',
      'name': record.name,
      'n': None,
      'measured': _cell(record.measured),
      'bound': _cell(record.bound),
      'passed': record.passed,
      'input': _cell(record.input),
    }
    for record in report.assertions
  ]
  for seminorm in report.reports:
    rows.extend(
      {
        'record': 'sample',
        'name': seminorm.label,
        'n': sample.n,
        'measured': sample.value,
        'bound': None,
        'passed': None,
        'input': None,
      }
      for sample in seminorm.samples
    )
  # Object columns keep ints next to empty sample cells
  frame = pd.DataFrame(rows, columns=CSV_COLUMNS, dtype=object)
  frame['n'] = frame['n'].astype('Int64')
  return frame


def to_csv(report: Union[SuiteReport, SeminormReport]) -> str:
  """CSV text for a suite or seminorm report."""
  frame = suite_frame(report) if isinstance(report, SuiteReport) else seminorm_frame(report)
  return frame.to_csv(index=False, lineterminator='\n')


def render(report: Union[SuiteReport, SeminormReport], output: str = 'json') -> str:
  """Render a report in the configured output format."""
  if output == 'csv':
    return to_csv(report)
  return to_json(report) + '\n'
