from .alphabet import *
from .distribution import *
from .entropy import *
from .formats import *
from .problem import *
from .thresholds import *
