"""
Tabular views of computed results as pandas data frames, and their CSV, JSON and text renderings.
"""
import json
import logging
from typing import Any, Dict, Sequence

import pandas as pd

from hitcalc import core, file_utils
from hitcalc.config import OutputFormat

logger = logging.getLogger(__name__)
logger.addHandler(logging.NullHandler())

EXPONENT_PREFIX = 'e'


def _exponent_columns(s: int) -> Dict[str, Any]:
    return {f"{EXPONENT_PREFIX}{i}": [] for i in range(1, s + 1)}


def basis_frame(quotient) -> pd.DataFrame:
    """
    Creates a data frame with one row per admissible monomial of a quotient basis.

    :param quotient: The quotient basis.
    :return: A data frame with the exponent columns, the weight vector and the P_s^0 / P_s^+ part.
    :raises: ValueError if the quotient is None.
    """
    if quotient is None:
        raise ValueError('Quotient cannot be none')
    data = _exponent_columns(quotient.s)
    data.update({'monomial': [], 'weight': [], 'part': []})
    for m in quotient.admissible:
        for i, a in enumerate(m, start=1):
            data[f"{EXPONENT_PREFIX}{i}"].append(a)
        data['monomial'].append(str(m))
        data['weight'].append(str(core.weight_vector(m)))
        data['part'].append('positive' if core.is_positive(m) else 'zero')
    return pd.DataFrame(data)


def weight_frame(quotient) -> pd.DataFrame:
    """
    Creates a data frame with the admissible counts of a quotient per weight vector.

    :param quotient: The quotient basis.
    :return: A data frame with columns weight, zero, positive and total.
    """
    if quotient is None:
        raise ValueError('Quotient cannot be none')
    rows = [{'weight': str(w), 'zero': zero, 'positive': positive, 'total': zero + positive}
            for w, (zero, positive) in quotient.by_weight().items()]
    return pd.DataFrame(rows, columns=['weight', 'zero', 'positive', 'total'])


def invariant_frame(space) -> pd.DataFrame:
    """
    Creates a data frame of an invariant space, one column per basis vector, one row per admissible monomial.
    """
    if space is None:
        raise ValueError('Invariant space cannot be none')
    data = {'monomial': [str(m) for m in space.monomials]}
    for j, v in enumerate(space.basis, start=1):
        data[f"v{j}"] = [(v >> i) & 1 for i in range(len(space.monomials))]
    return pd.DataFrame(data)


def report_frame(report) -> pd.DataFrame:
    """
    Creates a data frame with one row per check of a verification report.
    """
    if report is None:
        raise ValueError('Report cannot be none')
    rows = []
    for check in report.checks:
        details = check.to_dict()
        rows.append({
            'check': details['name'],
            'expected': details['expected'],
            'computed': details['computed'],
            'missing': len(details.get('missing', [])),
            'extra': len(details.get('extra', [])),
            'passed': details['passed']
        })
    return pd.DataFrame(rows, columns=['check', 'expected', 'computed', 'missing', 'extra', 'passed'])


def families_frame(families: Sequence, t: int = None) -> pd.DataFrame:
    """
    Creates a data frame of catalogue families, instantiated at t when given.

    :param families: The families.
    :param t: Optional parameter value; families not stated for t are left out.
    :return: A data frame with label, index, range and exponent columns.
    """
    if families is None:
        raise ValueError('Families cannot be none')
    rows = []
    for family in families:
        if t is not None and not family.validity.contains(t):
            continue
        row = {'label': family.label, 'k': family.k, 'range': str(family.validity)}
        values = family.instantiate(t) if t is not None else [str(e) for e in family.expressions]
        for i, value in enumerate(values, start=1):
            row[f"{EXPONENT_PREFIX}{i}"] = value
        rows.append(row)
    return pd.DataFrame(rows)


def table_frame(rows: Sequence[Dict[str, Any]]) -> pd.DataFrame:
    """
    Creates a data frame from a list of row dicts, one column per key.
    """
    return pd.DataFrame(list(rows))


def render(payload: Dict[str, Any], frame: pd.DataFrame, fmt: OutputFormat, text: str = None) -> str:
    """
    Renders a result for standard output.

    :param payload: The JSON payload.
    :param frame: The tabular view, used for CSV.
    :param fmt: The output format.
    :param text: The text rendering; defaults to the frame's string form.
    :return: The rendered string, without a trailing newline.
    """
    if fmt == OutputFormat.JSON:
        return json.dumps(payload, sort_keys=True)
    if fmt == OutputFormat.CSV:
        return frame.to_csv(index=False).rstrip('\n')
    if text is not None:
        return text
    return frame.to_string(index=False)


def write_frame(frame: pd.DataFrame, file_path: str) -> None:
    """
    Writes a data frame to a CSV or text file.

    :param frame: The data frame.
    :param file_path: The path to the file which will be created or overwritten.
    :return: None
    :raises: ValueError if either argument is None or the extension is unsupported.
    """
    if frame is None or file_path is None:
        raise ValueError('Data frame and file path must not be none')
    extension = file_utils.get_extension(file_path)
    if extension == 'csv':
        frame.to_csv(file_path, index=False)
    elif extension == 'txt':
        with open(file_path, mode='w') as f:
            f.write(frame.to_string(index=False))
            f.write('\n')
    else:
        raise ValueError(f"Only CSV and text tables are supported, found: {extension}")
    logger.info(f"Wrote {len(frame)} row(s) to {file_path}")


def write_json(payload: Dict[str, Any], file_path: str) -> None:
    if file_path is None:
        raise ValueError('File path cannot be none')
    if file_utils.get_extension(file_path) != 'json':
        raise ValueError('JSON output needs a .json file')
    with open(file_path, mode='w') as f:
        json.dump(payload, f, sort_keys=True)
        f.write('\n')
    logger.info(f"Wrote JSON to {file_path}")
