from freqcorrect.junta import PiercedSet


def leading_one():
    return PiercedSet(
        member=lambda x: x.startswith("1"),
        pos=lambda n: "1" * n,
        neg=lambda n: "0" * n,
        threshold=1,
        name="leading-one",
    )
