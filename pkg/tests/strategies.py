from hypothesis import strategies as st


def words(letters="aAbB", max_size=12):
    return st.text(alphabet=letters, max_size=max_size)
