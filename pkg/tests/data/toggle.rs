species: a b
reaction: R={a} I={b} P={b}
reaction: R={b} I={} P={a}
