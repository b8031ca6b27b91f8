"""Shipped formula corpora for the cross-checks."""

# Prenex sentences, at most three quantifiers each.
SENTENCES = [
    "true",
    "exists x. true",
    "exists x. exists y. !x=y",
    "forall x. exists y. E(x,y)",
    "exists x. forall y. (E(x,y) | x=y)",
    "exists x. forall y. !E(x,y)",
    "forall x. forall y. (E(x,y) | x=y)",
    "forall x. forall y. !E(x,y)",
    "exists x. exists y. (!x=y & !E(x,y))",
    "forall x. exists y. (!x=y & !E(x,y))",
    "exists x. exists y. exists z. (E(x,y) & E(y,z) & E(x,z))",
    "exists x. exists y. exists z. (E(x,y) & E(y,z) & !E(x,z) & !x=z)",
    "exists x. exists y. exists z. (!x=y & !x=z & !y=z & !E(x,y) & !E(x,z) & !E(y,z))",
    "forall x. exists y. exists z. (!y=z & E(x,y) & E(x,z))",
    "exists x. forall y. forall z. ((E(x,y) & E(x,z)) -> y=z)",
    "forall x. forall y. exists z. (x=y | (E(x,z) & E(y,z)))",
    "exists x. exists y. forall z. (E(x,z) | E(y,z) | z=x | z=y)",
    "forall x. forall y. forall z. ((E(x,y) & E(y,z)) -> (E(x,z) | x=z))",
    "exists x. exists y. forall z. (!x=y & (E(x,z) <-> E(y,z)))",
    "forall x. exists y. forall z. (!x=y & (E(y,z) -> E(x,z)))",
    "exists x. forall y. exists z. (E(x,z) & (y=z | E(y,z)))",
    "forall x. forall y. exists z. (!E(x,y) | (E(x,z) & E(y,z)))",
    "forall x. forall y. forall z. (x=y | x=z | y=z | E(x,y) | E(x,z) | E(y,z))",
    "exists x. exists y. forall z. (E(x,y) & (E(x,z) -> (z=y | E(y,z))))",
    "forall x. exists y. forall z. (E(x,z) -> E(y,z))",
    "exists x. L[red](x)",
    "forall x. (L[red](x) -> exists y. (E(x,y) & !L[red](y)))",
]

# Sentences that are not prenex; used to exercise prenex conversion.
NON_PRENEX = [
    "!(exists x. L[a](x))",
    "(exists x. E(x,x)) & (exists x. !E(x,x))",
    "(forall x. exists y. E(x,y)) | (exists x. forall y. !E(x,y))",
    "!(forall x. exists y. (E(x,y) & !x=y))",
    "(exists x. true) -> (forall y. exists z. E(y,z))",
    "(exists x. forall y. E(x,y)) <-> (forall x. exists y. !E(x,y))",
    "forall x. ((exists y. E(x,y)) -> (exists z. (E(x,z) & !z=x)))",
]

# Formulas with free variables among x_1, x_2, x_3 and quantifier rank <= 2.
OPEN_FORMULAS = [
    "E(x_1,x_2)",
    "x_1=x_2",
    "L[red](x_1) | E(x_1,x_2)",
    "exists z. (E(x_1,z) & E(z,x_2))",
    "forall z. (E(x_1,z) <-> E(x_2,z))",
    "exists z. (E(x_2,z) & !E(x_1,z) & !z=x_1)",
    "forall z. exists w. (E(z,w) & (E(x_1,w) | x_2=w))",
    "exists z. forall w. (E(z,w) -> (E(x_1,w) | w=x_2))",
    "E(x_1,x_3) & !E(x_2,x_3)",
    "x_1=x_3 | E(x_2,x_3)",
    "exists z. (E(x_3,z) & E(x_1,z) & !x_2=z)",
    "forall z. (E(x_3,z) -> exists w. (E(z,w) & !w=x_1))",
    "exists z. (x_1=z & E(z,x_3)) <-> E(x_1,x_2)",
]
