"""Print every worked example for the running category E and the simplex families."""
from diagram_forge.builtins import load_category
from diagram_forge.emit import (
    general_hc_type,
    reedy_diagram_type,
    render,
    semisimplicial_type,
    simplicial_type,
    weak_diagram_type,
)
from diagram_forge.nerve import positive_nerve_elements
from diagram_forge.strictify import plan_text, verify_matching_claim


def section(title: str, body: str) -> None:
    print(f"== {title}")
    print(body.rstrip("\n"))
    print()


def main() -> None:
    E = load_category("E")
    N = positive_nerve_elements(E)
    section("∫N⁺E", "\n".join(f"{len(s.arrows)}  {N.names[s]}" for s in N.objects))
    section("Reedy fibrant diagrams over E", render(reedy_diagram_type(E)))
    section("homotopy coherent diagrams over E", render(weak_diagram_type(E)))
    report = verify_matching_claim(E)
    section("strictification of E", plan_text(E) + f"matching claim: {'ok' if not report else report}")
    section("semisimplicial types, level 2", render(semisimplicial_type(2)))
    section("simplicial types, level 2", render(simplicial_type(2)))
    section("general coherent diagrams over 1, length 2", render(general_hc_type(load_category("terminal"), 2)))


if __name__ == "__main__":
    main()
