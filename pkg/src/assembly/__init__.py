from .greedy import *
from .overlap import *
