"""
ces-kit MCP Server
Exposes the dims, basis, certify, upb, seesaw and survey commands as tools
"""

import asyncio
import json
import logging
import sys
from typing import Any, Dict, List

from mcp.server import Server
from mcp.server.lowlevel import NotificationOptions
from mcp.server.models import InitializationOptions
from mcp.server.stdio import stdio_server
from mcp.types import TextContent, Tool

from ..api.commands import COMMANDS, run_command_safe
from ..core.config import Settings, get_settings
from ..core.errors import EXIT_USAGE, CESKitError
from ..core.logging_config import setup_logging
from ..models.config_models import RunConfig

logger = logging.getLogger("ces-kit-mcp")

_DIMS_SCHEMA = {
    "type": "array",
    "description": "Systems to process, each a list of local dimensions such as [2, 3, 4]",
    "items": {"type": "array", "items": {"type": "integer", "minimum": 2}, "minItems": 2},
    "minItems": 1,
}
_COMMON_PROPERTIES = {
    "dims": _DIMS_SCHEMA,
    "pair": {"type": "string", "description": "Slot pair 'j,j'' or 'all'", "default": "1,2"},
    "seed": {"type": "integer", "description": "Seed for every random choice"},
    "tol": {"type": "number", "description": "Verdict tolerance", "exclusiveMinimum": 0},
    "restarts": {"type": "integer", "minimum": 1},
    "method": {"type": "string", "enum": ["jacobi", "numpy"]},
}

TOOL_DESCRIPTIONS = {
    "dims": ("N, M, D and the level sizes |I_n| for each system", {}),
    "basis": ("Build an orthonormal basis of S and run every basis invariant", {
        "rotate_fill": {"type": "boolean", "default": False},
    }),
    "certify": ("Certify NPT_j of P_S or of a weighted mixture of basis projectors", {
        "all_levels": {"type": "boolean", "default": False},
        "weights": {"type": "string", "description": "uniform | random | path to a weight file", "default": "uniform"},
        "reflect": {"type": "boolean", "default": False},
        "no_assert": {"type": "boolean", "default": False},
    }),
    "upb": ("Validate a UPB fixture and certify its bound-entangled state, or search F", {
        "fixture": {"type": "string"},
        "search_f": {"type": "boolean", "default": False},
    }),
    "seesaw": ("Best product-state overlap with P_S (complete entanglement) or P_T", {
        "target": {"type": "string", "enum": ["S", "T"], "default": "S"},
        "iterations": {"type": "integer", "minimum": 1},
    }),
    "survey": ("Sample PT spectra of random states supported on S (no claim either way)", {
        "samples": {"type": "integer", "minimum": 1, "default": 20},
    }),
}


def list_tool_definitions() -> List[Tool]:
    tools = []
    for name, (description, extra) in TOOL_DESCRIPTIONS.items():
        properties = {**_COMMON_PROPERTIES, **extra}
        required = [] if name == "upb" else ["dims"]
        tools.append(Tool(
            name=name,
            description=description,
            inputSchema={"type": "object", "properties": properties, "required": required,
                         "additionalProperties": False},
        ))
    return tools


def dispatch_tool(name: str, arguments: Dict[str, Any]) -> Dict[str, Any]:
    """Run a tool synchronously and return its outcome dictionary"""
    if name not in COMMANDS:
        return {"success": False, "exit_code": EXIT_USAGE, "error": {"error": "UnknownTool", "message": f"Unknown tool: {name}"}}
    try:
        config = RunConfig(**(arguments or {}))
    except CESKitError as e:
        return {"success": False, "exit_code": e.exit_code, "error": e.to_dict()}
    except ValueError as e:
        return {"success": False, "exit_code": EXIT_USAGE, "error": {"error": "InvalidArguments", "message": str(e)}}
    return run_command_safe(name, config)


class CESKitMCPServer:
    """MCP server wrapping the ces-kit command layer"""

    def __init__(self, settings: Settings = None):
        self.settings = settings or get_settings()
        self.server = Server(self.settings.server.name)
        self._register_handlers()
        logger.info("ces-kit MCP server initialized")

    def _register_handlers(self):
        @self.server.list_tools()
        async def handle_list_tools() -> List[Tool]:
            return list_tool_definitions()

        @self.server.call_tool()
        async def handle_call_tool(name: str, arguments: Dict[str, Any]) -> List[TextContent]:
            logger.info(f"Executing tool: {name}")
            try:
                outcome = await asyncio.to_thread(dispatch_tool, name, arguments)
            except Exception as e:
                logger.error(f"Tool {name} failed: {e}")
                outcome = {"success": False, "exit_code": 1, "error": {"error": type(e).__name__, "message": str(e)}}
            return [TextContent(type="text", text=json.dumps(outcome, indent=2))]

    async def run(self):
        try:
            logger.info("Starting ces-kit MCP server")
            async with stdio_server() as (read_stream, write_stream):
                init_options = InitializationOptions(
                    server_name=self.settings.server.name,
                    server_version=self.settings.server.version,
                    capabilities=self.server.get_capabilities(NotificationOptions(), {}),
                )
                await self.server.run(read_stream, write_stream, init_options)
        except KeyboardInterrupt:
            logger.info("Server shutdown requested by user")


if __name__ == "__main__":
    setup_logging(get_settings().logging)
    try:
        asyncio.run(CESKitMCPServer().run())
    except KeyboardInterrupt:
        sys.stderr.write("Server stopped by user\n")
