"""
Orchestration Package
=====================

LangGraph-based episode orchestration.

WHY THIS PACKAGE EXISTS:
- Defines the control-step graph connecting simulator, policy and router
- Manages state flow between the steps of one control step
- Keeps termination (all RVs arrived or step cap) in one routing function
"""
