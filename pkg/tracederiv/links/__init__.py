from ..base import *
from .analysis import *
from .corpus import *
from .dataframe import *
from .engines import *
from .error import *
from .hpc import *
from .io import *
