from tests import utils

__all__ = ["utils"]
