from .multiset import *
from .readfile import *
