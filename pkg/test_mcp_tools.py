"""
Tool server tests: tool listing and synchronous dispatch
"""

from backend.app.mcp.server import TOOL_DESCRIPTIONS, dispatch_tool, list_tool_definitions


def test_every_command_is_listed():
    tools = list_tool_definitions()
    assert [tool.name for tool in tools] == list(TOOL_DESCRIPTIONS)
    assert {tool.name for tool in tools} == {"dims", "basis", "certify", "upb", "seesaw", "survey"}
    by_name = {tool.name: tool for tool in tools}
    assert by_name["dims"].inputSchema["required"] == ["dims"]
    assert by_name["upb"].inputSchema["required"] == []
    assert "samples" in by_name["survey"].inputSchema["properties"]


def test_dims_tool():
    outcome = dispatch_tool("dims", {"dims": [[3, 3]]})
    assert outcome["success"]
    assert outcome["exit_code"] == 0
    assert outcome["report"]["results"][0]["M"] == 4


def test_certify_tool():
    outcome = dispatch_tool("certify", {"dims": [[2, 2, 2]], "method": "numpy"})
    assert outcome["success"]
    assert outcome["report"]["results"][0]["report"]["verdict"] == "NPT_j-certified"


def test_unknown_tool():
    outcome = dispatch_tool("no_such_tool", {})
    assert not outcome["success"]
    assert outcome["exit_code"] == 2


def test_invalid_arguments():
    outcome = dispatch_tool("dims", {"dims": [[1, 3]]})
    assert not outcome["success"]
    assert outcome["exit_code"] == 2
    assert outcome["error"]["error"] == "DimsError"

    outcome = dispatch_tool("basis", {"dims": [[2, 2, 2]], "pair": "3,3"})
    assert outcome["exit_code"] == 2
