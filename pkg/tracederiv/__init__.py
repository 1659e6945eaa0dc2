from .base import Chain, Link, UnionLink
from .links import NullLink
from .utilities import LinkToolbox

toolbox = LinkToolbox()
