"""Ontology loading and term extraction for the dictionary builder.

Input is a single tab-separated file, loadable from any ontology export:

    id <TAB> parent_id <TAB> label <TAB> definition <TAB> synonyms <TAB> xrefs

with synonyms ``|``-joined and xrefs ``|``-joined ``ontology:code`` pairs.
Parent links must form a forest.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from ..ruleset import DictionaryEntry


class OntologyError(Exception):
    pass


@dataclass(frozen=True, slots=True)
class OntologyNode:
    id: str
    label: str
    parent: str | None = None
    synonyms: tuple[str, ...] = ()
    definition: str = ""
    xrefs: tuple[tuple[str, str], ...] = ()


class OntologyStore:
    def __init__(self, nodes: list[OntologyNode]):
        self.nodes: dict[str, OntologyNode] = {}
        self.children: dict[str, list[str]] = {}
        self.roots: list[str] = []
        for node in nodes:
            if node.id in self.nodes:
                raise OntologyError(f"duplicate ontology node id {node.id!r}")
            self.nodes[node.id] = node
        for node in nodes:
            if node.parent:
                if node.parent not in self.nodes:
                    raise OntologyError(
                        f"node {node.id!r} references unknown parent {node.parent!r}"
                    )
                self.children.setdefault(node.parent, []).append(node.id)
            else:
                self.roots.append(node.id)
        self._check_forest()

    def _check_forest(self) -> None:
        seen: set[str] = set()
        for node_id in self.nodes:
            trail = []
            current: str | None = node_id
            while current is not None and current not in seen:
                if current in trail:
                    raise OntologyError(f"parent links contain a cycle through {current!r}")
                trail.append(current)
                current = self.nodes[current].parent
            seen.update(trail)

    def subtree(self, root: str, depth: int | None = None) -> dict:
        if root not in self.nodes:
            raise KeyError(root)
        return self._node_dict(root, depth)

    def top_level(self, depth: int | None = 1) -> list[dict]:
        return [self._node_dict(node_id, depth) for node_id in self.roots]

    def _node_dict(self, node_id: str, depth: int | None) -> dict:
        node = self.nodes[node_id]
        child_ids = self.children.get(node_id, [])
        if depth is not None and depth <= 0:
            children = []
        else:
            next_depth = None if depth is None else depth - 1
            children = [self._node_dict(cid, next_depth) for cid in child_ids]
        return {
            "id": node.id,
            "label": node.label,
            "parent": node.parent,
            "synonyms": list(node.synonyms),
            "definition": node.definition,
            "xrefs": [{"ontology": ont, "code": code} for ont, code in node.xrefs],
            "has_children": bool(child_ids),
            "children": children,
        }

    def descendant_ids(self, root: str) -> list[str]:
        if root not in self.nodes:
            raise KeyError(root)
        out = [root]
        queue = list(self.children.get(root, []))
        while queue:
            node_id = queue.pop(0)
            out.append(node_id)
            queue.extend(self.children.get(node_id, []))
        return out

    def extract_entries(
        self,
        node_ids: list[str],
        concept: str,
        descendants: bool = False,
    ) -> list[DictionaryEntry]:
        """One entry per label and per synonym of each selected node (and of
        its subtree when ``descendants`` is set)."""
        selected: list[str] = []
        seen: set[str] = set()
        for node_id in node_ids:
            ids = self.descendant_ids(node_id) if descendants else [node_id]
            if not descendants and node_id not in self.nodes:
                raise KeyError(node_id)
            for nid in ids:
                if nid not in seen:
                    seen.add(nid)
                    selected.append(nid)
        entries: list[DictionaryEntry] = []
        for nid in selected:
            node = self.nodes[nid]
            source_ontology, source_code = "", ""
            if node.xrefs:
                source_ontology, source_code = node.xrefs[0]
            for surface in (node.label, *node.synonyms):
                entries.append(DictionaryEntry(
                    term=surface,
                    concept=concept,
                    source_code=source_code,
                    source_ontology=source_ontology,
                ))
        return entries


def load_ontology(path) -> OntologyStore:
    nodes: list[OntologyNode] = []
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 3:
            raise OntologyError(f"{path}:{lineno}: expected at least id, parent_id, label")
        node_id, parent_id, label = parts[0].strip(), parts[1].strip(), parts[2].strip()
        definition = parts[3] if len(parts) > 3 else ""
        synonyms = tuple(s for s in (parts[4].split("|") if len(parts) > 4 else []) if s)
        xrefs = []
        if len(parts) > 5:
            for pair in parts[5].split("|"):
                if not pair:
                    continue
                ontology, _, code = pair.partition(":")
                if not code:
                    raise OntologyError(f"{path}:{lineno}: xref {pair!r} is not ontology:code")
                xrefs.append((ontology, code))
        nodes.append(OntologyNode(
            id=node_id, label=label, parent=parent_id or None,
            synonyms=synonyms, definition=definition, xrefs=tuple(xrefs),
        ))
    return OntologyStore(nodes)
