"""
Agents Package
==============

Routing policies that choose road weights once per control step.

- base: RoutingPolicy interface, PolicyContext, PolicyDecision, Transition
- gaq: graph-attention Q-learning agent (one 5-way decision per fog region)
- baseline: density-only rule-based policy and the random-index policy

DESIGN PRINCIPLES:
- Policies only produce road weights; route assignment stays in the router
- Learning hooks are no-ops unless a policy learns
- Every random choice comes from the rng handed in with the context
"""
