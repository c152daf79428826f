from .analysis import *
from .config import *
from .plotting import *
from .runner import *
from .trials import *
