"""Common library/interface stripping.

Fungible tokens bundle standard interfaces and helper libraries that can
account for close to half of a source file and would inflate similarity
scores. Every top-level unit whose comment-stripped, whitespace-collapsed
text matches a corpus entry is removed before tokenization; user code is
kept verbatim.

The shipped corpus is a pinned snapshot of the usual suspects (ERC-20
interface, SafeMath, Context, Ownable, Address) in their most widely
cloned forms. It makes no claim of covering every published revision;
callers can extend it with their own entries.
"""

from __future__ import annotations

from .solidity import normalize_source, parse_units

_IERC20 = """
interface IERC20 {
    function totalSupply() external view returns (uint256);
    function balanceOf(address account) external view returns (uint256);
    function transfer(address recipient, uint256 amount) external returns (bool);
    function allowance(address owner, address spender) external view returns (uint256);
    function approve(address spender, uint256 amount) external returns (bool);
    function transferFrom(address sender, address recipient, uint256 amount) external returns (bool);
    event Transfer(address indexed from, address indexed to, uint256 value);
    event Approval(address indexed owner, address indexed spender, uint256 value);
}
"""

_IERC20_METADATA = """
interface IERC20Metadata is IERC20 {
    function name() external view returns (string memory);
    function symbol() external view returns (string memory);
    function decimals() external view returns (uint8);
}
"""

_CONTEXT = """
abstract contract Context {
    function _msgSender() internal view virtual returns (address) {
        return msg.sender;
    }

    function _msgData() internal view virtual returns (bytes calldata) {
        return msg.data;
    }
}
"""

_OWNABLE = """
abstract contract Ownable is Context {
    address private _owner;

    event OwnershipTransferred(address indexed previousOwner, address indexed newOwner);

    constructor() {
        _transferOwnership(_msgSender());
    }

    function owner() public view virtual returns (address) {
        return _owner;
    }

    modifier onlyOwner() {
        require(owner() == _msgSender(), "Ownable: caller is not the owner");
        _;
    }

    function renounceOwnership() public virtual onlyOwner {
        _transferOwnership(address(0));
    }

    function transferOwnership(address newOwner) public virtual onlyOwner {
        require(newOwner != address(0), "Ownable: new owner is the zero address");
        _transferOwnership(newOwner);
    }

    function _transferOwnership(address newOwner) internal virtual {
        address oldOwner = _owner;
        _owner = newOwner;
        emit OwnershipTransferred(oldOwner, newOwner);
    }
}
"""

_SAFEMATH = """
library SafeMath {
    function add(uint256 a, uint256 b) internal pure returns (uint256) {
        uint256 c = a + b;
        require(c >= a, "SafeMath: addition overflow");
        return c;
    }

    function sub(uint256 a, uint256 b) internal pure returns (uint256) {
        return sub(a, b, "SafeMath: subtraction overflow");
    }

    function sub(uint256 a, uint256 b, string memory errorMessage) internal pure returns (uint256) {
        require(b <= a, errorMessage);
        uint256 c = a - b;
        return c;
    }

    function mul(uint256 a, uint256 b) internal pure returns (uint256) {
        if (a == 0) {
            return 0;
        }
        uint256 c = a * b;
        require(c / a == b, "SafeMath: multiplication overflow");
        return c;
    }

    function div(uint256 a, uint256 b) internal pure returns (uint256) {
        return div(a, b, "SafeMath: division by zero");
    }

    function div(uint256 a, uint256 b, string memory errorMessage) internal pure returns (uint256) {
        require(b > 0, errorMessage);
        uint256 c = a / b;
        return c;
    }

    function mod(uint256 a, uint256 b) internal pure returns (uint256) {
        return mod(a, b, "SafeMath: modulo by zero");
    }

    function mod(uint256 a, uint256 b, string memory errorMessage) internal pure returns (uint256) {
        require(b != 0, errorMessage);
        return a % b;
    }
}
"""

_ADDRESS = """
library Address {
    function isContract(address account) internal view returns (bool) {
        uint256 size;
        assembly {
            size := extcodesize(account)
        }
        return size > 0;
    }

    function sendValue(address payable recipient, uint256 amount) internal {
        require(address(this).balance >= amount, "Address: insufficient balance");
        (bool success, ) = recipient.call{value: amount}("");
        require(success, "Address: unable to send value, recipient may have reverted");
    }
}
"""

DEFAULT_CORPUS_SOURCES: tuple[str, ...] = (
    _IERC20, _IERC20_METADATA, _CONTEXT, _OWNABLE, _SAFEMATH, _ADDRESS,
)

_default_corpus: frozenset[str] | None = None


def build_corpus(sources: tuple[str, ...] = DEFAULT_CORPUS_SOURCES) -> frozenset[str]:
    """Normalized texts of every top-level unit found in the given sources."""
    entries = set()
    for source in sources:
        for unit in parse_units(source):
            entries.add(normalize_source(unit.text))
    return frozenset(entries)


def default_corpus() -> frozenset[str]:
    global _default_corpus
    if _default_corpus is None:
        _default_corpus = build_corpus()
    return _default_corpus


def strip_common(source: str, corpus: frozenset[str] | None = None) -> str:
    """Drop every top-level unit whose normalized body matches a corpus
    entry; the kept units are returned verbatim, in order.

    Raises ParseFailure when the source cannot be parsed at all.
    """
    entries = corpus if corpus is not None else default_corpus()
    kept = [
        unit.text for unit in parse_units(source)
        if normalize_source(unit.text) not in entries
    ]
    return "\n\n".join(kept)
