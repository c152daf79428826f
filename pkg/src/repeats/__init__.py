from .detection import *
from .index import *
from .probability import *
from .swaps import *
