from .builders import (
    general_hc_type,
    reedy_diagram_type,
    semisimplicial_type,
    simplicial_type,
    weak_diagram_type,
    weak_names,
)
from .render import FORMATS, NameCollision, mangle, render
from .schema import (
    Ap,
    Apply,
    Component,
    Compose,
    Concat,
    ContextSchema,
    EqType,
    FamilyApp,
    FunType,
    IllFormedTelescope,
    IsEquiv,
    OpaqueT,
    Projection,
    Ref,
    SchemaError,
    SigmaTel,
    Universe,
    Var,
    check_telescope,
    is_subcontext,
    parse_schema,
    schema_from_json,
    schema_to_json,
    telescope_errors,
)
