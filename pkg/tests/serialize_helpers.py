from gradedlca.core import AlgebraSpec, ExplicitTable, Support


def abelian(window=(-2, 2)):
    return AlgebraSpec("abelian", ExplicitTable({}, window), Support(*window))
