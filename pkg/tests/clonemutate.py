"""Random token-contract generator and obfuscating mutator for clone tests.

Contracts are assembled from component templates, so the mutator can apply
the classic tricks independently: comment/whitespace injection, consistent
identifier renaming, and top-level component reordering.
"""

from __future__ import annotations

import random
import re

_STATE_VARS = [
    "mapping(address => uint256) {vis} {n1};",
    "mapping(address => mapping(address => uint256)) {vis} {n1};",
    "uint256 {vis} {n1} = {num} * 10**18;",
    "string {vis} {n1} = \"{word}\";",
    "address {vis} {n1};",
    "bool {vis} {n1};",
    "uint8 {vis} constant {n1} = {small};",
]

_FUNCTIONS = [
    """function {n1}(address {a}, uint256 {b}) public returns (bool) {{
        require({a} != address(0), "{word}");
        balances[msg.sender] = balances[msg.sender] - {b};
        balances[{a}] = balances[{a}] + {b};
        emit Moved(msg.sender, {a}, {b});
        return true;
    }}""",
    """function {n1}() public view returns (uint256) {{
        return supply;
    }}""",
    """function {n1}(uint256 {a}) external {{
        if (balances[msg.sender] >= {a}) {{
            supply = supply - {a};
        }} else {{
            supply = supply + {a} * {small};
        }}
    }}""",
    """function {n1}(address {a}) external {{
        for (uint256 {b} = 0; {b} < {small}; {b}++) {{
            balances[{a}] = balances[{a}] + {b};
        }}
    }}""",
    """function {n1}(uint256 {a}, uint256 {b}) internal pure returns (uint256) {{
        uint256 {c} = {a} >= {b} ? {a} - {b} : {b} - {a};
        return {c} * {small};
    }}""",
]

_EVENTS = [
    "event {n1}(address indexed {a}, uint256 {b});",
    "event {n1}(address indexed {a}, address indexed {b}, uint256 {c});",
]

_MODIFIERS = [
    """modifier {n1}() {{
        require(msg.sender == owner, "{word}");
        _;
    }}""",
]

_WORDS = ["alpha", "bravo", "carrot", "delta", "ember", "fox", "gamma", "husk"]

_RESERVED = {
    "pragma", "solidity", "contract", "library", "interface", "abstract",
    "function", "constructor", "fallback", "receive", "event", "modifier",
    "struct", "enum", "using", "for", "if", "else", "while", "do", "return",
    "emit", "break", "continue", "throw", "assembly", "unchecked", "try",
    "catch", "new", "delete", "public", "private", "internal", "external",
    "view", "pure", "payable", "constant", "immutable", "virtual", "override",
    "memory", "storage", "calldata", "indexed", "anonymous", "returns",
    "mapping", "address", "bool", "string", "bytes", "byte", "true", "false",
    "require", "msg", "sender", "value", "data", "this", "wei", "gwei",
    "ether", "seconds", "minutes", "hours", "days", "weeks",
    "_",  # the modifier placeholder statement
}
_TYPE_RE = re.compile(r"^(u?int\d*|bytes\d+|u?fixed(\d+x\d+)?)$")
_IDENT_RE = re.compile(r"[A-Za-z_$][A-Za-z0-9_$]*")


def random_contract(rng: random.Random, n_components: int = 8) -> str:
    """A syntactically valid token-style contract with shuffled templates."""
    pools = [(_STATE_VARS, 3), (_FUNCTIONS, 4), (_EVENTS, 2), (_MODIFIERS, 1)]
    picks: list[str] = [
        "uint256 public supply;",
        "mapping(address => uint256) public balances;",
        "address public owner;",
        "event Moved(address indexed src, address indexed dst, uint256 amt);",
    ]
    for _ in range(n_components):
        templates, _weight = rng.choice(pools)
        picks.append(rng.choice(templates))
    rendered = []
    for i, template in enumerate(picks):
        rendered.append(template.format(
            n1=f"op{i}_{rng.randint(0, 999)}",
            a=f"p{i}a", b=f"p{i}b", c=f"p{i}c",
            vis=rng.choice(["public", "private", "internal"]),
            num=rng.randint(1, 9_000_000),
            small=rng.randint(1, 200),
            word=rng.choice(_WORDS),
        ))
    body = "\n\n    ".join(rendered)
    return f"contract Token{rng.randint(0, 10**6)} {{\n    {body}\n}}\n"


def reorder_components(source: str, rng: random.Random) -> str:
    """Shuffle the blank-line-separated component blocks inside the body."""
    head, _, rest = source.partition("{")
    body, _, tail = rest.rpartition("}")
    blocks = [b for b in body.split("\n\n") if b.strip()]
    rng.shuffle(blocks)
    return head + "{\n" + "\n\n".join(blocks) + "\n}" + tail


def rename_identifiers(source: str, rng: random.Random) -> str:
    """Consistently rename every non-reserved identifier."""
    mapping: dict[str, str] = {}

    def fresh(name: str) -> str:
        if name not in mapping:
            mapping[name] = f"z{rng.randrange(10**9)}_{len(mapping)}"
        return mapping[name]

    def replace(match: re.Match) -> str:
        name = match.group(0)
        if name in _RESERVED or _TYPE_RE.match(name):
            return name
        return fresh(name)

    out = []
    pos = 0
    # walk outside of string literals and comments
    token_re = re.compile(r"//[^\n]*|/\*.*?\*/|\"(?:[^\"\\]|\\.)*\"|'(?:[^'\\]|\\.)*'",
                          re.DOTALL)
    for m in token_re.finditer(source):
        out.append(_IDENT_RE.sub(replace, source[pos:m.start()]))
        out.append(m.group(0))
        pos = m.end()
    out.append(_IDENT_RE.sub(replace, source[pos:]))
    return "".join(out)


def sprinkle_comments(source: str, rng: random.Random) -> str:
    """Insert comments and stray whitespace at random line boundaries."""
    lines = source.split("\n")
    out = []
    for line in lines:
        if rng.random() < 0.3:
            out.append(f"  // {rng.choice(_WORDS)} {rng.randint(0, 999)}")
        if rng.random() < 0.2:
            out.append(f"  /* {rng.choice(_WORDS)} */")
        out.append(line.replace("    ", "\t" if rng.random() < 0.3 else "    "))
    return "\n".join(out)


def mutate(source: str, rng: random.Random) -> str:
    """Comments + whitespace, renaming, and reordering, in random order."""
    steps = [sprinkle_comments, rename_identifiers, reorder_components]
    rng.shuffle(steps)
    mutated = source
    for step in steps:
        mutated = step(mutated, rng)
    return mutated
