{"kind":"cs","events":["a","b"],"configurations":[[],["a"],["b"]]}
