# tests/test_entity_rng.py

from src.models.entity_rng import EntityRng, entity_rng_draw


def test_misma_extraccion_mismo_valor():
    assert entity_rng_draw(42, 3, 'gen', 17) == entity_rng_draw(42, 3, 'gen', 17)


def test_flujo_reproducible():
    a, b = EntityRng(7, 1), EntityRng(7, 1)
    assert [a.draw('gen') for _ in range(50)] == [b.draw('gen') for _ in range(50)]


def test_coincide_con_la_funcion_pura():
    rng = EntityRng(5, 9)
    valores = [rng.draw('gen') for _ in range(3)]
    assert valores == [entity_rng_draw(5, 9, 'gen', k) for k in range(3)]


def test_entidades_distintas_flujos_distintos():
    a, b = EntityRng(42, 0), EntityRng(42, 1)
    assert [a.draw('gen') for _ in range(100)] != [b.draw('gen') for _ in range(100)]


def test_propositos_independientes():
    rng = EntityRng(1, 1)
    primero = rng.draw('gen')
    rng.draw('stim')
    rng.draw('stim')
    assert rng.draws_realizados('gen') == 1
    assert rng.draws_realizados('stim') == 2
    assert primero == entity_rng_draw(1, 1, 'gen', 0)


def test_rango_unitario():
    rng = EntityRng(3, 4)
    valores = [rng.draw('gen') for _ in range(2000)]
    assert all(0.0 <= v < 1.0 for v in valores)
    assert 0.45 < sum(valores) / len(valores) < 0.55


def test_extraccion_con_clave_no_avanza_contadores():
    rng = EntityRng(2, 2)
    x = rng.draw_keyed('fwd', 0, 0, 5)
    assert rng.draw_keyed('fwd', 0, 0, 5) == x
    assert rng.draw_keyed('fwd', 0, 0, 6) != x
    assert rng.draws_realizados('fwd') == 0


def test_choice_elige_de_las_opciones():
    rng = EntityRng(8, 0)
    opciones = (3, 5, 9)
    elegidos = {rng.choice('stim', opciones) for _ in range(100)}
    assert elegidos == {3, 5, 9}
