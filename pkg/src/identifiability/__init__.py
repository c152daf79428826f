from .oracle import *
from .verdict import *
