"""
Grammar of the `.skb` knowledge-base format and the run-time command format.

Statements are parsed one line at a time, so every rule below describes a
single line. Comments start with `#`.
"""

from lark import Lark

SKB_GRAMMAR = r"""
    ?statement: type_decl
              | individuals_decl
              | schema_decl
              | prior_decl
              | row_decl

    type_decl: "type" IDENT "=" "{" "}" "."
             | "type" IDENT "=" "{" ident_list "}" "."

    individuals_decl: "individuals" "{" "}" "."
                    | "individuals" "{" ident_list "}" "."

    schema_decl: "schema" parents "->" atom "."

    parents: parent ("," parent)*

    ?parent: atom
           | quantifier

    quantifier: (EXISTS | FORALL) IDENT "in" IDENT "." atom

    prior_decl: "p" "(" atom ")" "=" NUMBER "."

    row_decl: "p" "(" atom "|" conditions ")" "=" NUMBER "."

    conditions: condition ("," condition)*

    condition: parent
             | NEG parent

    ?command: observe
            | query
            | member

    observe: "observe" atom "=" (TRUE | FALSE)
    query: "query" atom
    member: "member" IDENT "+=" IDENT

    atom: IDENT
        | IDENT "(" ")"
        | IDENT "(" ident_list ")"

    ident_list: IDENT ("," IDENT)*

    EXISTS: "exists"
    FORALL: "forall"
    TRUE: "true"
    FALSE: "false"
    NEG: "~"
    IDENT: /[A-Za-z][A-Za-z0-9_]*/
    NUMBER: /[0-9]+(\.[0-9]+)?([eE][-+]?[0-9]+)?/

    COMMENT: /#[^\n]*/
    %import common.WS
    %ignore WS
    %ignore COMMENT
"""

PARSER = Lark(
    SKB_GRAMMAR,
    start=["statement", "command", "atom"],
    parser="lalr",
    lexer="contextual",
)
