"""
ces-kit MCP integration
Model Context Protocol tools over the ces-kit command layer
"""

from .server import CESKitMCPServer, dispatch_tool, list_tool_definitions

__all__ = ["CESKitMCPServer", "dispatch_tool", "list_tool_definitions"]
