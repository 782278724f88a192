# Sobol-Levitan primitive polynomials and initial direction numerators for
# dimensions 1..40, from the data set distributed with Bratley & Fox
# (ACM TOMS algorithm 659). Each entry is (polynomial, initial numerators).
# Polynomials are bit-encoded with the leading term as the highest bit,
# e.g. 11 = x^3 + x + 1. Dimension 1 has no recurrence; every numerator is 1.
#
# Two initial numerators differ from TOMS 659: dimension 4 level 3 (7 -> 1)
# and dimension 6 level 3 (1 -> 7), so that the table agrees with the classic
# LP-tau direction points pinned in lowdisc.REFERENCE_DIRECTIONS.

DIRECTION_DATA = (
    (1, (1,)),  # dim 1
    (3, (1,)),  # dim 2
    (7, (1, 1)),  # dim 3
    (11, (1, 3, 1)),  # dim 4
    (13, (1, 1, 5)),  # dim 5
    (19, (1, 3, 7, 1)),  # dim 6
    (25, (1, 1, 3, 7)),  # dim 7
    (37, (1, 3, 3, 9, 9)),  # dim 8
    (59, (1, 3, 7, 13, 3)),  # dim 9
    (47, (1, 1, 5, 11, 27)),  # dim 10
    (61, (1, 3, 5, 1, 15)),  # dim 11
    (55, (1, 1, 7, 3, 29)),  # dim 12
    (41, (1, 3, 7, 7, 21)),  # dim 13
    (67, (1, 1, 1, 9, 23, 37)),  # dim 14
    (97, (1, 3, 3, 5, 19, 33)),  # dim 15
    (91, (1, 1, 3, 13, 11, 7)),  # dim 16
    (109, (1, 1, 7, 13, 25, 5)),  # dim 17
    (103, (1, 3, 5, 11, 7, 11)),  # dim 18
    (115, (1, 1, 1, 3, 13, 39)),  # dim 19
    (131, (1, 3, 1, 15, 17, 63, 13)),  # dim 20
    (193, (1, 1, 5, 5, 1, 27, 33)),  # dim 21
    (137, (1, 3, 3, 3, 25, 17, 115)),  # dim 22
    (145, (1, 1, 3, 15, 29, 15, 41)),  # dim 23
    (143, (1, 3, 1, 7, 3, 23, 79)),  # dim 24
    (241, (1, 3, 7, 9, 31, 29, 17)),  # dim 25
    (157, (1, 1, 5, 13, 11, 3, 29)),  # dim 26
    (185, (1, 3, 1, 9, 5, 21, 119)),  # dim 27
    (167, (1, 1, 3, 1, 23, 13, 75)),  # dim 28
    (229, (1, 3, 3, 11, 27, 31, 73)),  # dim 29
    (171, (1, 1, 7, 7, 19, 25, 105)),  # dim 30
    (213, (1, 3, 5, 5, 21, 9, 7)),  # dim 31
    (191, (1, 1, 1, 15, 5, 49, 59)),  # dim 32
    (253, (1, 1, 1, 1, 1, 33, 65)),  # dim 33
    (203, (1, 3, 5, 15, 17, 19, 21)),  # dim 34
    (211, (1, 1, 7, 11, 13, 29, 3)),  # dim 35
    (239, (1, 3, 7, 5, 7, 11, 113)),  # dim 36
    (247, (1, 1, 5, 3, 15, 19, 61)),  # dim 37
    (285, (1, 3, 1, 1, 9, 27, 89, 7)),  # dim 38
    (369, (1, 1, 3, 7, 31, 15, 45, 23)),  # dim 39
    (299, (1, 3, 3, 9, 9, 25, 107, 39)),  # dim 40
)
