from fastcore.utils import *

from .cli import *
from .compose import *
from .config import *
from .corpus import *
from .extract import *
from .graph import *
from .matching import *
from .netstats import *
from .powerlaw import *
from .randgraph import *
from .report import *
from .wsdl import *
