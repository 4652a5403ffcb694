from .nodes.measure_nodes import (
    NODE_CLASS_MAPPINGS as MEASURE_NODE_CLASS_MAPPINGS,
    NODE_DISPLAY_NAME_MAPPINGS as MEASURE_NODE_DISPLAY_NAME_MAPPINGS,
)
from .nodes.report_nodes import (
    NODE_CLASS_MAPPINGS as REPORT_NODE_CLASS_MAPPINGS,
    NODE_DISPLAY_NAME_MAPPINGS as REPORT_NODE_DISPLAY_NAME_MAPPINGS,
)

__version__ = "0.1.0"

NODE_CLASS_MAPPINGS = {
    **MEASURE_NODE_CLASS_MAPPINGS,
    **REPORT_NODE_CLASS_MAPPINGS,
}
NODE_DISPLAY_NAME_MAPPINGS = {
    **MEASURE_NODE_DISPLAY_NAME_MAPPINGS,
    **REPORT_NODE_DISPLAY_NAME_MAPPINGS,
}
