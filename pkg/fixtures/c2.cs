{"kind":"cs","events":["a","b","c"],"configurations":[[],["a"],["b"],["c"],["a","c"],["b","c"],["a","b","c"]]}
