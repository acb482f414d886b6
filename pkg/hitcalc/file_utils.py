import os
from typing import Dict

DATA_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data')


def file_exists(file: str) -> bool:
    """
    This function checks whether a file at a given path currently exists.

    :param file: the path to the file
    :return: a bool indicating whether the file exists
    """
    return os.path.isfile(file)


def get_extension(file_path: str) -> str:
    """
    Returns the lowercase extension of a file at a specified path.

    :param file_path: the path to the file
    :return: the lowercase file extension
    """
    if file_path is None or file_path == '':
        raise ValueError('File path cannot be none or empty')
    return os.path.splitext(file_path)[1].replace('.', '').lower()


def data_file(name: str) -> str:
    """
    Returns the path of a data file shipped inside the package.

    :param name: the file name, relative to the package data directory
    :return: the absolute path to the data file
    :raises: ValueError if the file does not exist
    """
    path = os.path.join(DATA_DIR, name)
    if not file_exists(path):
        raise ValueError(f"Package data file not found: {name}")
    return path


def read_key_value_file(file_path: str) -> Dict[str, str]:
    """
    Reads a flat key=value file. Blank lines and lines starting with '#' are skipped.
    Keys are lowercased and dashes are normalized to underscores.

    :param file_path: the path to the file
    :return: a dict mapping key to its raw string value
    :raises: ValueError if the file is missing or a line has no '=' separator
    """
    if not file_exists(file_path):
        raise ValueError(f"The file {file_path} does not exist")
    values = {}
    with open(file_path, mode='r') as f:
        for number, line in enumerate(f, start=1):
            line = line.strip()
            if line == '' or line.startswith('#'):
                continue
            if '=' not in line:
                raise ValueError(f"Line {number} of {file_path} is not a key=value pair: {line}")
            key, value = line.split('=', 1)
            values[key.strip().lower().replace('-', '_')] = value.strip()
    return values
